//! Assembly of the deterministic JSON reports the command line emits: the
//! per-index invariants table, the transferred-theorem run, and the
//! infinite-path construction walkthrough.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{FamilyKind, GraphFamily};
use crate::graph::{Graph, HamiltonianCriteria};
use crate::hypernat::HyperNat;
use crate::nonstandard::UltraGraph;
use crate::seq::SeqNat;
use crate::transfer::{check_transfer, Decision, TheoremId, TransferReport};
use crate::ultrafilter::Ultrafilter;

/// A hypernatural as reports print it: defining sequence, prose description,
/// and its position relative to the standard numbers.
#[derive(Debug, Clone, Serialize)]
pub struct HyperNatSummary {
    pub sequence: SeqNat,
    pub description: String,
    pub standard_value: Option<u64>,
    pub unlimited: bool,
}

impl HyperNatSummary {
    fn of(h: &HyperNat) -> Result<HyperNatSummary> {
        Ok(HyperNatSummary {
            sequence: h.seq().clone(),
            description: h.seq().describe(),
            standard_value: h.standard_value()?,
            unlimited: h.is_unlimited(),
        })
    }
}

/// One row of the per-index invariants table.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeRow {
    pub n: u64,
    pub vertices: u64,
    pub edges: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclomatic: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter: Option<u64>,
    pub max_degree: u64,
    pub min_degree: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountsSummary {
    pub vertices: HyperNatSummary,
    pub edges: HyperNatSummary,
    pub cyclomatic: HyperNatSummary,
    pub identity_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricsSummary {
    pub radius: HyperNatSummary,
    pub diameter: HyperNatSummary,
    pub bound_ok: bool,
}

/// Per-index invariants plus their hypernatural summaries.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub family: GraphFamily,
    pub point: Ultrafilter,
    pub window: u64,
    pub connected: Decision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountsSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<MetricsSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eulerian: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<HamiltonianCriteria>,
    pub rows: Vec<AnalyzeRow>,
    /// False when a class precondition (connectivity, finiteness, size) was
    /// decided against the family.
    pub preconditions_met: bool,
    /// True when some truth set left the decidable algebra.
    pub undecided: bool,
    pub notes: Vec<String>,
}

/// Builds the per-index invariants report, soaking up precondition failures
/// and undecidable truth sets as recorded outcomes rather than errors.
pub fn analyze(ug: &UltraGraph) -> Result<AnalyzeReport> {
    let mut notes = Vec::new();
    let mut preconditions_met = true;
    let mut undecided = false;

    let connected = match ug.connected() {
        Ok(true) => Decision::In,
        Ok(false) => Decision::Out,
        Err(Error::Undecidable(msg)) => {
            notes.push(msg);
            undecided = true;
            Decision::Undecided
        }
        Err(e) => return Err(e),
    };
    if connected != Decision::In {
        preconditions_met = false;
    }

    // Each summary op degrades to an explanatory note when the family fails
    // its class precondition or escapes the symbolic forms.
    let counts = match ug.counts() {
        Ok(c) => Some(CountsSummary {
            vertices: HyperNatSummary::of(&c.vertices)?,
            edges: HyperNatSummary::of(&c.edges)?,
            cyclomatic: HyperNatSummary::of(&c.cyclomatic)?,
            identity_holds: c.identity_holds,
        }),
        Err(e) => {
            skip_summary("counts", e, &mut notes, &mut preconditions_met, &mut undecided)?;
            None
        }
    };
    let metrics = match ug.metrics() {
        Ok(m) => Some(MetricsSummary {
            radius: HyperNatSummary::of(&m.radius)?,
            diameter: HyperNatSummary::of(&m.diameter)?,
            bound_ok: m.bound_ok,
        }),
        Err(e) => {
            skip_summary("metrics", e, &mut notes, &mut preconditions_met, &mut undecided)?;
            None
        }
    };
    let eulerian = match ug.eulerian() {
        Ok(flag) => Some(flag),
        Err(e) => {
            skip_summary("eulerian", e, &mut notes, &mut preconditions_met, &mut undecided)?;
            None
        }
    };
    let hamiltonian = match ug.hamiltonian_criteria() {
        Ok(c) => Some(c),
        Err(e) => {
            skip_summary("hamiltonian", e, &mut notes, &mut preconditions_met, &mut undecided)?;
            None
        }
    };

    let rows = if matches!(ug.family().kind(), FamilyKind::InfinitePath) {
        notes.push("the symbolic infinite path has no per-index table".into());
        Vec::new()
    } else {
        (0..ug.window())
            .map(|n| {
                let g = ug.family().graph_at(n)?;
                Ok(analyze_row(n, &g))
            })
            .collect::<Result<_>>()?
    };

    Ok(AnalyzeReport {
        family: ug.family().clone(),
        point: ug.filter().clone(),
        window: ug.window(),
        connected,
        counts,
        metrics,
        eulerian,
        hamiltonian,
        rows,
        preconditions_met,
        undecided,
        notes,
    })
}

fn analyze_row(n: u64, g: &Graph) -> AnalyzeRow {
    let metrics = g.metrics().ok();
    AnalyzeRow {
        n,
        vertices: g.vertex_count() as u64,
        edges: g.edge_count() as u64,
        cyclomatic: g.cyclomatic_number().ok(),
        radius: metrics.as_ref().map(|m| m.radius),
        diameter: metrics.as_ref().map(|m| m.diameter),
        max_degree: g.max_degree(),
        min_degree: g
            .vertices()
            .map(|v| g.degree(v).expect("own vertex") as u64)
            .min()
            .unwrap_or(0),
    }
}

fn skip_summary(
    what: &str,
    e: Error,
    notes: &mut Vec<String>,
    preconditions_met: &mut bool,
    undecided: &mut bool,
) -> Result<()> {
    match e {
        Error::NotConnected | Error::NotInCf(_) => {
            *preconditions_met = false;
            notes.push(format!("{what}: skipped, {e}"));
        }
        Error::Undecidable(_) => {
            *undecided = true;
            notes.push(format!("{what}: {e}"));
        }
        Error::LengthFormOverflow { .. } => {
            notes.push(format!("{what}: {e}"));
        }
        other => return Err(other),
    }
    Ok(())
}

/// Outcome of one requested theorem in a transfer run.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum TheoremOutcome {
    Report(Box<TransferReport>),
    PreconditionFailed { theorem: TheoremId, precondition_failed: String },
    Undecidable { theorem: TheoremId, undecidable: String },
}

/// One transfer report per requested theorem, over a single family and
/// filter point.
#[derive(Debug, Clone, Serialize)]
pub struct TransferRunReport {
    pub family: GraphFamily,
    pub point: Ultrafilter,
    pub window: u64,
    pub reports: Vec<TheoremOutcome>,
    pub preconditions_met: bool,
    pub undecided: bool,
}

pub fn run_transfer(ug: &UltraGraph, theorems: &[TheoremId]) -> Result<TransferRunReport> {
    let mut reports = Vec::with_capacity(theorems.len());
    let mut preconditions_met = true;
    let mut undecided = false;
    for &t in theorems {
        match check_transfer(t, ug) {
            Ok(r) => {
                undecided |= r.decision == Decision::Undecided;
                reports.push(TheoremOutcome::Report(Box::new(r)));
            }
            Err(Error::PreconditionFailed(msg)) => {
                preconditions_met = false;
                reports.push(TheoremOutcome::PreconditionFailed {
                    theorem: t,
                    precondition_failed: msg,
                });
            }
            Err(Error::Undecidable(msg)) => {
                undecided = true;
                reports.push(TheoremOutcome::Undecidable { theorem: t, undecidable: msg });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(TransferRunReport {
        family: ug.family().clone(),
        point: ug.filter().clone(),
        window: ug.window(),
        reports,
        preconditions_met,
        undecided,
    })
}

/// One base map's worth of the infinite-path construction walkthrough.
#[derive(Debug, Clone, Serialize)]
pub struct InfinitePathCase {
    pub label: String,
    pub base_map: SeqNat,
    /// [k_n] and [k_n + 1] form a nonstandard edge.
    pub consecutive_offset_is_edge: bool,
    /// [k_n] and [k_n + 2] do not.
    pub constant_offset_two_is_edge: bool,
    /// [k_n] and [k_n + n + 2] do not.
    pub growing_offset_is_edge: bool,
    /// [k_n], [k_n + 1], [k_n + 2] are pairwise distinct classes.
    pub classes_pairwise_distinct: bool,
}

/// The construction walkthrough on the one-way infinite path: consecutive
/// index maps form an edge, larger offsets never do, and the classes stay
/// distinct — for the identity and doubled base maps.
#[derive(Debug, Clone, Serialize)]
pub struct InfinitePathReport {
    pub point: Ultrafilter,
    pub cases: Vec<InfinitePathCase>,
    pub all_as_expected: bool,
}

pub fn infinite_path_walkthrough(filter: &Ultrafilter) -> Result<InfinitePathReport> {
    let ug = UltraGraph::new(GraphFamily::infinite_path(), filter.clone());
    let mut cases = Vec::new();
    for (label, stride) in [("k_n = n", 1u64), ("k_n = 2n", 2)] {
        let base = SeqNat::affine(stride, 0);
        let x = ug.vertex(base.clone())?;
        let y = ug.vertex(base.add(&SeqNat::constant(1))?)?;
        let z = ug.vertex(base.add(&SeqNat::constant(2))?)?;
        let w = ug.vertex(base.add(&SeqNat::affine(1, 2))?)?;
        cases.push(InfinitePathCase {
            label: label.into(),
            base_map: base,
            consecutive_offset_is_edge: ug.adjacent(&x, &y)?,
            constant_offset_two_is_edge: ug.adjacent(&x, &z)?,
            growing_offset_is_edge: ug.adjacent(&x, &w)?,
            classes_pairwise_distinct: !ug.vertex_eq(&x, &y)?
                && !ug.vertex_eq(&y, &z)?
                && !ug.vertex_eq(&x, &z)?,
        });
    }
    let all_as_expected = cases.iter().all(|c| {
        c.consecutive_offset_is_edge
            && !c.constant_offset_two_is_edge
            && !c.growing_offset_is_edge
            && c.classes_pairwise_distinct
    });
    Ok(InfinitePathReport { point: filter.clone(), cases, all_as_expected })
}
