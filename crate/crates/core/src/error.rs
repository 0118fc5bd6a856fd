use crate::graph::VertexId;

/// Errors shared across the crate.
///
/// Construction errors (`InvalidGraph`, `InvalidForm`, `InvalidPoint`,
/// `InvalidFamily`) reject ill-formed inputs at the boundary so that the
/// algorithms can rely on the type invariants. The remaining variants report
/// honest negative outcomes: a precondition that fails almost everywhere, a
/// quantity that leaves the supported symbolic forms, or a question the
/// decidable fragment cannot answer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("both endpoints are the same vertex")]
    SameVertex,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no closed trail through every edge: {0}")]
    NotEulerian(String),
    #[error("graph has {got} vertices but the operation needs at least {needed}")]
    TooSmall { needed: usize, got: usize },
    #[error("graph has {got} vertices, above the exhaustive-search bound {bound}")]
    TooLarge { bound: usize, got: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("modulus {modulus} does not divide {limit}!, outside the decidable fragment")]
    ModulusOverflow { modulus: u64, limit: u32 },
    #[error("invalid ultrafilter point: {0}")]
    InvalidPoint(String),

    #[error("result leaves the supported sequence forms: {0}")]
    FormOverflow(String),
    #[error("invalid sequence form: {0}")]
    InvalidForm(String),
    #[error("operands live over different ultrafilters")]
    FilterMismatch,

    #[error("invalid graph family: {0}")]
    InvalidFamily(String),
    #[error("operands belong to different graph families")]
    FamilyMismatch,
    #[error("the two vertices are equal almost everywhere")]
    IdenticalVertices,
    #[error("index map is not a valid vertex almost everywhere")]
    InvalidIndexMap,
    #[error("family is not connected almost everywhere")]
    NotConnected,
    #[error("family is not almost everywhere a finite connected graph with an edge: {0}")]
    NotInCf(String),
    #[error("symbolic infinite graphs cannot be materialized")]
    Unmaterializable,
    #[error("unsupported subgraph rule: {0}")]
    UnsupportedRule(String),
    #[error("per-index values do not fit the supported sequence forms; window: {window:?}")]
    LengthFormOverflow { window: Vec<u64> },
    #[error("maximum degree is not bounded by {bound} almost everywhere")]
    DegreeBoundViolated { bound: u64 },
    #[error("question leaves the decidable fragment: {0}")]
    Undecidable(String),
    #[error("theorem precondition fails almost everywhere: {0}")]
    PreconditionFailed(String),

    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
