//! Ultrapower graphs over symbolic index sequences.
//!
//! The crate builds nonstandard graphs as ultrapowers of sequences of finite
//! (or symbolically infinite) graphs, modulo an ultrafilter drawn from a
//! decidable fragment: the Boolean algebra of eventually periodic subsets of
//! the naturals. Within that fragment every membership question "is this set
//! of indices large?" has an exact answer, so equality, adjacency, and
//! transferred theorem checks on the ultrapower are decided rather than
//! sampled. Anything that escapes the fragment is evaluated over a finite
//! window and reported as empirical, never silently upgraded to exact.
//!
//! Layout:
//! - [`graph`]: finite simple graphs and the classical per-index algorithms
//!   (paths, spanning trees, Euler circuits, Hamiltonian criteria, coloring).
//! - [`index_set`]: eventually periodic sets of indices in canonical form,
//!   with Boolean operations and windowed classification of opaque predicates.
//! - [`ultrafilter`]: profinite points selecting an ultrafilter on that
//!   algebra, and the `decide` operation.
//! - [`seq`]: symbolic sequences of naturals (affine, quadratic, periodic,
//!   table-with-tail) with exact pointwise comparison and arithmetic.
//! - [`hypernat`]: hypernaturals as sequences modulo the chosen ultrafilter.
//! - [`family`]: symbolic sequences of graphs and their materialization.
//! - [`nonstandard`]: vertices, edges, and paths of the ultrapower graph.
//! - [`transfer`]: registry of classical theorems checked per index and
//!   almost everywhere.
//! - [`report`]: JSON report assembly shared by the CLI.
//! - [`random`]: seeded random connected graphs for test corpora.

pub mod error;
pub mod graph;
pub mod index_set;
pub mod ultrafilter;
pub mod seq;
pub mod hypernat;
pub mod family;
pub mod nonstandard;
pub mod transfer;
pub mod report;
pub mod random;

pub use error::Error;
pub use graph::{Coloring, Edge, Graph, GraphMetrics, HamiltonianCriteria, Loop, Path, Trail, VertexId};
pub use index_set::{IndexSet, PredicateClass, SetClass};
pub use ultrafilter::{Membership, Ultrafilter};
pub use seq::SeqNat;
pub use hypernat::HyperNat;
pub use family::{FamilyKind, GraphFamily, KeepRule, TruthSet};
pub use nonstandard::{NsColoring, NsCounts, NsEdge, NsMetrics, NsPath, NsVertex, UltraGraph};
pub use transfer::{check_standard, check_transfer, Decision, TheoremId, TransferReport, Witness};
pub use report::{analyze, infinite_path_walkthrough, run_transfer, AnalyzeReport, InfinitePathReport, TransferRunReport};
