//! Symbolic sequences of graphs.
//!
//! A [`GraphFamily`] describes one graph per index without materializing the
//! sequence: a fixed graph, a growing path/cycle/complete graph whose size is
//! a [`SeqNat`], a periodic rotation of fixed graphs, explicit overrides over
//! a tail, a symbolic infinite path, or a vertex-filtered derivation of any
//! finite-at-every-index family.
//!
//! Two kinds of questions are answered here. `graph_at` materializes a single
//! index for per-index work. The `*_set` and `*_form` methods answer symbolic
//! questions — "at which indices is this pair adjacent?", "what sequence are
//! the edge counts?" — exactly, inside the eventually periodic algebra, or
//! admit they cannot (`None` / an overflow error) so callers can fall back to
//! windowed empirical classification instead of silently guessing.

use std::collections::BTreeSet;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::index_set::IndexSet;
use crate::seq::SeqNat;

/// Largest graph `graph_at` will materialize.
pub const MATERIALIZE_CAP: u64 = 1 << 17;

/// Sizes probed beyond the stabilization floor when extrapolating a per-size
/// predicate.
pub const PROBE_SPAN: u64 = 32;

/// Largest graph the per-size probe will materialize.
pub const PROBE_SIZE_CAP: u64 = 512;

/// Longest explicit prefix of override graphs.
pub const MAX_PREFIX_GRAPHS: usize = 1024;

/// Most graphs in a periodic rotation.
pub const MAX_PERIODIC_GRAPHS: usize = 64;

/// How a per-index truth set was obtained, and what it is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "source", content = "value", rename_all = "snake_case")]
pub enum TruthSet {
    /// Derived symbolically; correct at every index.
    Exact(IndexSet),
    /// Extrapolated from a finite window of evaluations.
    Empirical(IndexSet),
    /// The window matched no supported pattern; raw observations.
    Undecided(Vec<bool>),
}

impl TruthSet {
    /// The set, when one was found.
    #[must_use]
    pub fn set(&self) -> Option<&IndexSet> {
        match self {
            TruthSet::Exact(s) | TruthSet::Empirical(s) => Some(s),
            TruthSet::Undecided(_) => None,
        }
    }

    #[must_use]
    pub fn is_exact(&self) -> bool {
        matches!(self, TruthSet::Exact(_))
    }
}

/// Vertex-keeping rule for derived families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeepRule {
    /// Keep vertices with id strictly below the threshold sequence.
    BelowThreshold(SeqNat),
    /// Keep vertices whose id lies in the given residue classes.
    ResidueClasses { modulus: u64, residues: BTreeSet<u64> },
}

impl KeepRule {
    /// Indices at which the value of `id` survives the rule.
    fn keep_set(&self, id: &SeqNat) -> Result<IndexSet> {
        match self {
            KeepRule::BelowThreshold(t) => Ok(id.compare_pointwise(t)?.less),
            KeepRule::ResidueClasses { modulus, residues } => {
                let mut out = IndexSet::empty();
                for &r in residues {
                    out = out.union(&id.residue_set(*modulus, r)?)?;
                }
                Ok(out)
            }
        }
    }

    fn keeps_value(&self, v: u64, n: u64) -> bool {
        match self {
            KeepRule::BelowThreshold(t) => v < t.eval(n),
            KeepRule::ResidueClasses { modulus, residues } => residues.contains(&(v % modulus)),
        }
    }
}

/// The shape of a family; construct through [`GraphFamily`]'s constructors,
/// which validate sizes and bounds.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyKind {
    /// The same graph at every index.
    Constant(Graph),
    /// The one-way infinite path on the naturals: `i ~ j` iff `|i - j| = 1`.
    /// Never materialized.
    InfinitePath,
    /// Path graphs `P_{size(n)}`.
    GrowingPath { size: SeqNat },
    /// Cycle graphs `C_{size(n)}`, size at least 3 everywhere.
    GrowingCycle { size: SeqNat },
    /// Complete graphs `K_{size(n)}`.
    GrowingComplete { size: SeqNat },
    /// Rotation `graphs[n % len]`.
    PeriodicGraphs(Vec<Graph>),
    /// Explicit graphs below `prefix.len()`, then the tail family at the
    /// absolute index.
    Explicit { prefix: Vec<Graph>, tail: Box<GraphFamily> },
    /// The base family with only the vertices surviving `rule`, and the
    /// induced edges.
    Derived { base: Box<GraphFamily>, rule: KeepRule },
}

/// A symbolic sequence of graphs, optionally carrying a suggested analysis
/// window.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphFamily {
    kind: FamilyKind,
    window: Option<u64>,
}

impl GraphFamily {
    fn from_kind(kind: FamilyKind) -> GraphFamily {
        GraphFamily { kind, window: None }
    }

    #[must_use]
    pub fn constant(graph: Graph) -> GraphFamily {
        Self::from_kind(FamilyKind::Constant(graph))
    }

    #[must_use]
    pub fn infinite_path() -> GraphFamily {
        Self::from_kind(FamilyKind::InfinitePath)
    }

    pub fn growing_path(size: SeqNat) -> Result<GraphFamily> {
        if size.global_min() < 1 {
            return Err(Error::InvalidFamily("path sizes must be at least 1".into()));
        }
        Ok(Self::from_kind(FamilyKind::GrowingPath { size }))
    }

    pub fn growing_cycle(size: SeqNat) -> Result<GraphFamily> {
        if size.global_min() < 3 {
            return Err(Error::InvalidFamily("cycle sizes must be at least 3".into()));
        }
        Ok(Self::from_kind(FamilyKind::GrowingCycle { size }))
    }

    pub fn growing_complete(size: SeqNat) -> Result<GraphFamily> {
        if size.global_min() < 1 {
            return Err(Error::InvalidFamily("complete-graph sizes must be at least 1".into()));
        }
        Ok(Self::from_kind(FamilyKind::GrowingComplete { size }))
    }

    pub fn periodic_graphs(graphs: Vec<Graph>) -> Result<GraphFamily> {
        if graphs.is_empty() || graphs.len() > MAX_PERIODIC_GRAPHS {
            return Err(Error::InvalidFamily(format!(
                "periodic families need 1..={MAX_PERIODIC_GRAPHS} graphs, got {}",
                graphs.len()
            )));
        }
        Ok(Self::from_kind(FamilyKind::PeriodicGraphs(graphs)))
    }

    pub fn explicit(prefix: Vec<Graph>, tail: GraphFamily) -> Result<GraphFamily> {
        if prefix.len() > MAX_PREFIX_GRAPHS {
            return Err(Error::InvalidFamily(format!(
                "explicit prefixes are capped at {MAX_PREFIX_GRAPHS} graphs"
            )));
        }
        if matches!(tail.kind, FamilyKind::Explicit { .. }) {
            return Err(Error::InvalidFamily("explicit tails must not nest".into()));
        }
        Ok(Self::from_kind(FamilyKind::Explicit { prefix, tail: Box::new(tail) }))
    }

    /// The base family restricted per index to the vertices surviving the
    /// rule. The base must be finite at every index; filtering the infinite
    /// path is handled upstream where the result is itself a named family.
    pub fn derived(base: GraphFamily, rule: KeepRule) -> Result<GraphFamily> {
        if !base.finite_everywhere() {
            return Err(Error::UnsupportedRule(
                "vertex filters apply to families that are finite at every index".into(),
            ));
        }
        if let KeepRule::ResidueClasses { modulus, residues } = &rule {
            if *modulus == 0 || residues.iter().any(|&r| r >= *modulus) {
                return Err(Error::InvalidFamily("residue classes must lie below the modulus".into()));
            }
        }
        Ok(Self::from_kind(FamilyKind::Derived { base: Box::new(base), rule }))
    }

    /// Attaches a suggested analysis window (from configuration files).
    pub fn with_window(mut self, window: Option<u64>) -> Result<GraphFamily> {
        if let Some(w) = window {
            if !(8..=1 << 16).contains(&w) {
                return Err(Error::InvalidConfig(format!(
                    "window must lie in 8..=65536, got {w}"
                )));
            }
        }
        self.window = window;
        Ok(self)
    }

    #[must_use]
    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    #[must_use]
    pub fn suggested_window(&self) -> Option<u64> {
        self.window
    }

    /// True when every index holds a finite graph.
    #[must_use]
    pub fn finite_everywhere(&self) -> bool {
        match &self.kind {
            FamilyKind::InfinitePath => false,
            FamilyKind::Constant(_)
            | FamilyKind::GrowingPath { .. }
            | FamilyKind::GrowingCycle { .. }
            | FamilyKind::GrowingComplete { .. }
            | FamilyKind::PeriodicGraphs(_) => true,
            FamilyKind::Explicit { tail, .. } => tail.finite_everywhere(),
            FamilyKind::Derived { base, rule } => match rule {
                KeepRule::BelowThreshold(_) => true,
                KeepRule::ResidueClasses { .. } => base.finite_everywhere(),
            },
        }
    }

    /// Materializes the graph at one index.
    pub fn graph_at(&self, n: u64) -> Result<Graph> {
        match &self.kind {
            FamilyKind::Constant(g) => Ok(g.clone()),
            FamilyKind::InfinitePath => Err(Error::Unmaterializable),
            FamilyKind::GrowingPath { size } => Ok(Graph::path_graph(Self::checked_size(size, n)?)),
            FamilyKind::GrowingCycle { size } => Graph::cycle_graph(Self::checked_size(size, n)?),
            FamilyKind::GrowingComplete { size } => {
                Ok(Graph::complete_graph(Self::checked_size(size, n)?))
            }
            FamilyKind::PeriodicGraphs(graphs) => {
                Ok(graphs[(n % graphs.len() as u64) as usize].clone())
            }
            FamilyKind::Explicit { prefix, tail } => match prefix.get(n as usize) {
                Some(g) => Ok(g.clone()),
                None => tail.graph_at(n),
            },
            FamilyKind::Derived { base, rule } => {
                let g = base.graph_at(n)?;
                let kept: BTreeSet<VertexId> = g
                    .vertices()
                    .filter(|v| rule.keeps_value(v.0, n))
                    .collect();
                g.induced_subgraph(&kept)
            }
        }
    }

    fn checked_size(size: &SeqNat, n: u64) -> Result<u64> {
        let m = size.eval(n);
        if m > MATERIALIZE_CAP {
            return Err(Error::TooLarge { bound: MATERIALIZE_CAP as usize, got: m as usize });
        }
        Ok(m)
    }

    /// Indices at which `id` names a vertex of the graph, exactly.
    pub fn vertex_validity_set(&self, id: &SeqNat) -> Result<IndexSet> {
        match &self.kind {
            FamilyKind::InfinitePath => Ok(IndexSet::full()),
            FamilyKind::GrowingPath { size }
            | FamilyKind::GrowingCycle { size }
            | FamilyKind::GrowingComplete { size } => Ok(id.compare_pointwise(size)?.less),
            FamilyKind::Constant(g) => Self::value_membership(id, g.vertices().map(|v| v.0)),
            FamilyKind::PeriodicGraphs(graphs) => {
                let k = graphs.len() as u64;
                let mut out = IndexSet::empty();
                for (j, g) in graphs.iter().enumerate() {
                    let here = Self::value_membership(id, g.vertices().map(|v| v.0))?
                        .intersection(&IndexSet::periodic(k, [j as u64])?)?;
                    out = out.union(&here)?;
                }
                Ok(out)
            }
            FamilyKind::Explicit { prefix, tail } => {
                let mut out = tail.vertex_validity_set(id)?;
                for (n, g) in prefix.iter().enumerate() {
                    let n = n as u64;
                    out = out.with_member(n, g.contains_vertex(VertexId(id.eval(n))));
                }
                Ok(out)
            }
            FamilyKind::Derived { base, rule } => {
                base.vertex_validity_set(id)?.intersection(&rule.keep_set(id)?)
            }
        }
    }

    /// Indices at which the values of `x` and `y` form an edge, exactly.
    /// Edge membership presumes both endpoints are valid vertices, so the
    /// result is a subset of both validity sets.
    pub fn adjacency_set(&self, x: &SeqNat, y: &SeqNat) -> Result<IndexSet> {
        match &self.kind {
            FamilyKind::InfinitePath => Self::successor_set(x, y),
            FamilyKind::GrowingPath { size } => {
                let succ = Self::successor_set(x, y)?;
                let both_valid = x
                    .compare_pointwise(size)?
                    .less
                    .intersection(&y.compare_pointwise(size)?.less)?;
                succ.intersection(&both_valid)
            }
            FamilyKind::GrowingCycle { size } => {
                let succ = Self::successor_set(x, y)?;
                let wrap_xy = x
                    .equal_set(&SeqNat::constant(0))?
                    .intersection(&y.add(&SeqNat::constant(1))?.equal_set(size)?)?;
                let wrap_yx = y
                    .equal_set(&SeqNat::constant(0))?
                    .intersection(&x.add(&SeqNat::constant(1))?.equal_set(size)?)?;
                let both_valid = x
                    .compare_pointwise(size)?
                    .less
                    .intersection(&y.compare_pointwise(size)?.less)?;
                succ.union(&wrap_xy)?.union(&wrap_yx)?.intersection(&both_valid)
            }
            FamilyKind::GrowingComplete { size } => {
                let distinct = x.equal_set(y)?.complement();
                let both_valid = x
                    .compare_pointwise(size)?
                    .less
                    .intersection(&y.compare_pointwise(size)?.less)?;
                distinct.intersection(&both_valid)
            }
            FamilyKind::Constant(g) => Self::constant_adjacency(g, x, y),
            FamilyKind::PeriodicGraphs(graphs) => {
                let k = graphs.len() as u64;
                let mut out = IndexSet::empty();
                for (j, g) in graphs.iter().enumerate() {
                    let here = Self::constant_adjacency(g, x, y)?
                        .intersection(&IndexSet::periodic(k, [j as u64])?)?;
                    out = out.union(&here)?;
                }
                Ok(out)
            }
            FamilyKind::Explicit { prefix, tail } => {
                let mut out = tail.adjacency_set(x, y)?;
                for (n, g) in prefix.iter().enumerate() {
                    let n = n as u64;
                    let (a, b) = (VertexId(x.eval(n)), VertexId(y.eval(n)));
                    out = out.with_member(n, a != b && g.contains_edge(a, b));
                }
                Ok(out)
            }
            FamilyKind::Derived { base, rule } => base
                .adjacency_set(x, y)?
                .intersection(&rule.keep_set(x)?)?
                .intersection(&rule.keep_set(y)?),
        }
    }

    /// `{ n : |x(n) - y(n)| = 1 }`.
    fn successor_set(x: &SeqNat, y: &SeqNat) -> Result<IndexSet> {
        let one = SeqNat::constant(1);
        x.add(&one)?.equal_set(y)?.union(&y.add(&one)?.equal_set(x)?)
    }

    /// `{ n : seq(n) in values }`.
    fn value_membership(seq: &SeqNat, values: impl IntoIterator<Item = u64>) -> Result<IndexSet> {
        let mut out = IndexSet::empty();
        for v in values {
            out = out.union(&seq.equal_set(&SeqNat::constant(v))?)?;
        }
        Ok(out)
    }

    fn constant_adjacency(g: &Graph, x: &SeqNat, y: &SeqNat) -> Result<IndexSet> {
        let mut out = IndexSet::empty();
        for e in g.edges() {
            let (a, b) = e.endpoints();
            let fwd = x
                .equal_set(&SeqNat::constant(a.0))?
                .intersection(&y.equal_set(&SeqNat::constant(b.0))?)?;
            let rev = x
                .equal_set(&SeqNat::constant(b.0))?
                .intersection(&y.equal_set(&SeqNat::constant(a.0))?)?;
            out = out.union(&fwd)?.union(&rev)?;
        }
        Ok(out)
    }

    /// The vertex-count sequence, when it exists in the symbolic family
    /// (`None` for infinite or derived families).
    pub fn vertex_count_form(&self) -> Result<Option<SeqNat>> {
        match &self.kind {
            FamilyKind::Constant(g) => Ok(Some(SeqNat::constant(g.vertex_count() as u64))),
            FamilyKind::InfinitePath => Ok(None),
            FamilyKind::GrowingPath { size }
            | FamilyKind::GrowingCycle { size }
            | FamilyKind::GrowingComplete { size } => Ok(Some(size.clone())),
            FamilyKind::PeriodicGraphs(graphs) => Ok(Some(SeqNat::periodic(
                graphs.iter().map(|g| g.vertex_count() as u64).collect(),
            )?)),
            FamilyKind::Explicit { prefix, tail } => Self::override_form(
                tail.vertex_count_form()?,
                prefix.iter().map(|g| Some(g.vertex_count() as u64)),
            ),
            FamilyKind::Derived { .. } => Ok(None),
        }
    }

    /// The edge-count sequence, when representable. `None` also covers
    /// growing complete graphs whose size map is already quadratic — the
    /// count would leave the degree-2 family.
    pub fn edge_count_form(&self) -> Result<Option<SeqNat>> {
        match &self.kind {
            FamilyKind::Constant(g) => Ok(Some(SeqNat::constant(g.edge_count() as u64))),
            FamilyKind::InfinitePath => Ok(None),
            FamilyKind::GrowingPath { size } => {
                Ok(Some(size.monus(&SeqNat::constant(1))?))
            }
            FamilyKind::GrowingCycle { size } => Ok(Some(size.clone())),
            FamilyKind::GrowingComplete { size } => {
                let product = match size.mul(&size.monus(&SeqNat::constant(1))?) {
                    Ok(p) => p,
                    Err(Error::FormOverflow(_)) => return Ok(None),
                    Err(e) => return Err(e),
                };
                Ok(product.floor_div_const(2)?)
            }
            FamilyKind::PeriodicGraphs(graphs) => Ok(Some(SeqNat::periodic(
                graphs.iter().map(|g| g.edge_count() as u64).collect(),
            )?)),
            FamilyKind::Explicit { prefix, tail } => Self::override_form(
                tail.edge_count_form()?,
                prefix.iter().map(|g| Some(g.edge_count() as u64)),
            ),
            FamilyKind::Derived { .. } => Ok(None),
        }
    }

    /// The largest-degree sequence, when representable.
    pub fn max_degree_form(&self) -> Result<Option<SeqNat>> {
        match &self.kind {
            FamilyKind::Constant(g) => Ok(Some(SeqNat::constant(g.max_degree()))),
            FamilyKind::InfinitePath => Ok(Some(SeqNat::constant(2))),
            FamilyKind::GrowingPath { size } => {
                // min(2, size - 1): 0 for a point, 1 for one edge, else 2.
                Ok(SeqNat::constant(2).pointwise_min(&size.monus(&SeqNat::constant(1))?)?)
            }
            FamilyKind::GrowingCycle { .. } => Ok(Some(SeqNat::constant(2))),
            FamilyKind::GrowingComplete { size } => Ok(Some(size.monus(&SeqNat::constant(1))?)),
            FamilyKind::PeriodicGraphs(graphs) => Ok(Some(SeqNat::periodic(
                graphs.iter().map(Graph::max_degree).collect(),
            )?)),
            FamilyKind::Explicit { prefix, tail } => Self::override_form(
                tail.max_degree_form()?,
                prefix.iter().map(|g| Some(g.max_degree())),
            ),
            FamilyKind::Derived { .. } => Ok(None),
        }
    }

    /// The smallest-degree sequence, when representable.
    pub fn min_degree_form(&self) -> Result<Option<SeqNat>> {
        let min_degree = |g: &Graph| -> u64 {
            g.vertices().map(|v| g.degree(v).expect("own vertex") as u64).min().unwrap_or(0)
        };
        match &self.kind {
            FamilyKind::Constant(g) => Ok(Some(SeqNat::constant(min_degree(g)))),
            // Vertex 0 of the infinite path has only one neighbor.
            FamilyKind::InfinitePath => Ok(Some(SeqNat::constant(1))),
            FamilyKind::GrowingPath { size } => {
                Ok(SeqNat::constant(1).pointwise_min(&size.monus(&SeqNat::constant(1))?)?)
            }
            FamilyKind::GrowingCycle { .. } => Ok(Some(SeqNat::constant(2))),
            FamilyKind::GrowingComplete { size } => Ok(Some(size.monus(&SeqNat::constant(1))?)),
            FamilyKind::PeriodicGraphs(graphs) => {
                Ok(Some(SeqNat::periodic(graphs.iter().map(min_degree).collect())?))
            }
            FamilyKind::Explicit { prefix, tail } => Self::override_form(
                tail.min_degree_form()?,
                prefix.iter().map(|g| Some(min_degree(g))),
            ),
            FamilyKind::Derived { .. } => Ok(None),
        }
    }

    /// The diameter sequence, when every index is connected and the form is
    /// representable.
    pub fn diameter_form(&self) -> Result<Option<SeqNat>> {
        let const_metric = |g: &Graph, pick: fn(&crate::graph::GraphMetrics) -> u64| {
            g.metrics().ok().map(|m| pick(&m))
        };
        match &self.kind {
            FamilyKind::Constant(g) => Self::optional_const(const_metric(g, |m| m.diameter)),
            FamilyKind::InfinitePath => Ok(None),
            FamilyKind::GrowingPath { size } => Ok(Some(size.monus(&SeqNat::constant(1))?)),
            FamilyKind::GrowingCycle { size } => Ok(size.floor_div_const(2)?),
            FamilyKind::GrowingComplete { size } => {
                // 0 for a point, 1 otherwise.
                Ok(SeqNat::constant(1).pointwise_min(&size.monus(&SeqNat::constant(1))?)?)
            }
            FamilyKind::PeriodicGraphs(graphs) => {
                let diameters: Option<Vec<u64>> =
                    graphs.iter().map(|g| const_metric(g, |m| m.diameter)).collect();
                match diameters {
                    Some(d) => Ok(Some(SeqNat::periodic(d)?)),
                    None => Ok(None),
                }
            }
            FamilyKind::Explicit { prefix, tail } => Self::override_form(
                tail.diameter_form()?,
                prefix.iter().map(|g| const_metric(g, |m| m.diameter)),
            ),
            FamilyKind::Derived { .. } => Ok(None),
        }
    }

    /// The radius sequence, under the same conditions as the diameter.
    pub fn radius_form(&self) -> Result<Option<SeqNat>> {
        let const_metric = |g: &Graph| g.metrics().ok().map(|m| m.radius);
        match &self.kind {
            FamilyKind::Constant(g) => Self::optional_const(const_metric(g)),
            FamilyKind::InfinitePath => Ok(None),
            // Center of a path: floor(size / 2) hops to the far end.
            FamilyKind::GrowingPath { size } | FamilyKind::GrowingCycle { size } => {
                Ok(size.floor_div_const(2)?)
            }
            FamilyKind::GrowingComplete { size } => {
                Ok(SeqNat::constant(1).pointwise_min(&size.monus(&SeqNat::constant(1))?)?)
            }
            FamilyKind::PeriodicGraphs(graphs) => {
                let radii: Option<Vec<u64>> = graphs.iter().map(const_metric).collect();
                match radii {
                    Some(r) => Ok(Some(SeqNat::periodic(r)?)),
                    None => Ok(None),
                }
            }
            FamilyKind::Explicit { prefix, tail } => Self::override_form(
                tail.radius_form()?,
                prefix.iter().map(const_metric),
            ),
            FamilyKind::Derived { .. } => Ok(None),
        }
    }

    fn optional_const(v: Option<u64>) -> Result<Option<SeqNat>> {
        Ok(v.map(SeqNat::constant))
    }

    /// The set of indices at which `pred` holds of the graph.
    ///
    /// Exact for constant, periodic, explicit, and size-driven families whose
    /// per-size behavior stabilizes into a short cycle (every registered
    /// predicate on paths, cycles, and complete graphs is a parity or small
    /// threshold condition, so it does). Anything else is evaluated over
    /// `window` indices and classified empirically, or left undecided.
    pub fn truth_set(&self, window: u64, pred: &dyn Fn(&Graph) -> bool) -> Result<TruthSet> {
        match &self.kind {
            FamilyKind::Constant(g) => {
                Ok(TruthSet::Exact(if pred(g) { IndexSet::full() } else { IndexSet::empty() }))
            }
            FamilyKind::InfinitePath => Err(Error::Unmaterializable),
            FamilyKind::PeriodicGraphs(graphs) => {
                let k = graphs.len() as u64;
                let residues = graphs
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| pred(g))
                    .map(|(j, _)| j as u64);
                Ok(TruthSet::Exact(IndexSet::periodic(k, residues)?))
            }
            FamilyKind::GrowingPath { size }
            | FamilyKind::GrowingCycle { size }
            | FamilyKind::GrowingComplete { size } => {
                self.size_driven_truth(size, window, pred)
            }
            FamilyKind::Explicit { prefix, tail } => {
                let inner = tail.truth_set(window, pred)?;
                let overridden = |set: IndexSet| -> IndexSet {
                    let mut out = set;
                    for (n, g) in prefix.iter().enumerate() {
                        out = out.with_member(n as u64, pred(g));
                    }
                    out
                };
                Ok(match inner {
                    TruthSet::Exact(s) => TruthSet::Exact(overridden(s)),
                    TruthSet::Empirical(s) => TruthSet::Empirical(overridden(s)),
                    TruthSet::Undecided(_) => self.windowed_truth(window, pred)?,
                })
            }
            FamilyKind::Derived { .. } => self.windowed_truth(window, pred),
        }
    }

    /// Truth set of a predicate that factors through the size: evaluate the
    /// predicate per size on real graphs, find the eventual cycle, and
    /// compose it with the exact residue and level sets of the size map.
    fn size_driven_truth(
        &self,
        size: &SeqNat,
        window: u64,
        pred: &dyn Fn(&Graph) -> bool,
    ) -> Result<TruthSet> {
        let min_size = size.global_min();
        // Bounded size maps take finitely many values: decide each one.
        if let Some(values) = size.bounded_values() {
            // Transient prefix values need the same treatment.
            let mut candidates: BTreeSet<u64> = values.into_iter().collect();
            candidates.extend((0..size.prefix_len()).map(|n| size.eval(n)));
            if candidates.iter().any(|&v| v > PROBE_SIZE_CAP) {
                return self.windowed_truth(window, pred);
            }
            let mut out = IndexSet::empty();
            for v in candidates {
                if pred(&self.shape_at_size(v)?) {
                    out = out.union(&size.equal_set(&SeqNat::constant(v))?)?;
                }
            }
            return Ok(TruthSet::Exact(out));
        }
        let lo = min_size.max(16);
        if lo > PROBE_SIZE_CAP - PROBE_SPAN {
            return self.windowed_truth(window, pred);
        }
        let q = |m: u64| -> Result<bool> { Ok(pred(&self.shape_at_size(m)?)) };
        let probe: Vec<bool> =
            (lo..=lo + PROBE_SPAN).map(q).collect::<Result<_>>()?;
        let Some(d) = (1..=4u64)
            .find(|&d| (0..probe.len() as u64 - d).all(|i| probe[i as usize] == probe[(i + d) as usize]))
        else {
            return self.windowed_truth(window, pred);
        };
        // Sizes below the floor, handled exactly by level sets.
        let mut out = IndexSet::empty();
        for v in min_size..lo {
            if q(v)? {
                out = out.union(&size.equal_set(&SeqNat::constant(v))?)?;
            }
        }
        // Sizes at or beyond the floor, by the verified cycle.
        let at_least_lo = size.compare_pointwise(&SeqNat::constant(lo))?.less.complement();
        for r in 0..d {
            // Representative of this class within the probed range.
            let rep = lo + (d + r - lo % d) % d;
            if probe[(rep - lo) as usize] {
                let here = size.residue_set(d, r)?.intersection(&at_least_lo)?;
                out = out.union(&here)?;
            }
        }
        Ok(TruthSet::Exact(out))
    }

    /// Materializes the family's shape at a given size (growing kinds only).
    fn shape_at_size(&self, m: u64) -> Result<Graph> {
        if m > MATERIALIZE_CAP {
            return Err(Error::TooLarge { bound: MATERIALIZE_CAP as usize, got: m as usize });
        }
        match &self.kind {
            FamilyKind::GrowingPath { .. } => Ok(Graph::path_graph(m)),
            FamilyKind::GrowingCycle { .. } => Graph::cycle_graph(m),
            FamilyKind::GrowingComplete { .. } => Ok(Graph::complete_graph(m)),
            _ => Err(Error::InvalidFamily("only growing families have a size shape".into())),
        }
    }

    /// Evaluates the predicate on `[0, window)` and classifies the bits.
    /// Never exact: the observations end at the window.
    pub fn windowed_truth(&self, window: u64, pred: &dyn Fn(&Graph) -> bool) -> Result<TruthSet> {
        let bits: Vec<bool> = (0..window)
            .map(|n| Ok(pred(&self.graph_at(n)?)))
            .collect::<Result<_>>()?;
        Ok(match IndexSet::classify_window(&bits, None) {
            crate::index_set::PredicateClass::Empirical(s) => TruthSet::Empirical(s),
            crate::index_set::PredicateClass::Undecided(b) => TruthSet::Undecided(b),
        })
    }

    /// Overrides the first values of a tail form; gives up when either side
    /// is missing a value.
    fn override_form(
        tail: Option<SeqNat>,
        prefix_values: impl Iterator<Item = Option<u64>>,
    ) -> Result<Option<SeqNat>> {
        let Some(tail) = tail else { return Ok(None) };
        let values: Option<Vec<u64>> = prefix_values.collect();
        let Some(values) = values else { return Ok(None) };
        Ok(Some(tail.with_prefix_overrides(&values)?))
    }
}

impl GraphFamily {
    fn to_value(&self) -> serde_json::Value {
        let mut v = match &self.kind {
            FamilyKind::Constant(g) => serde_json::json!({ "kind": "constant", "graph": g }),
            FamilyKind::InfinitePath => serde_json::json!({ "kind": "infinite_path" }),
            FamilyKind::GrowingPath { size } => {
                serde_json::json!({ "kind": "growing_path", "size": size })
            }
            FamilyKind::GrowingCycle { size } => {
                serde_json::json!({ "kind": "growing_cycle", "size": size })
            }
            FamilyKind::GrowingComplete { size } => {
                serde_json::json!({ "kind": "growing_complete", "size": size })
            }
            FamilyKind::PeriodicGraphs(graphs) => {
                serde_json::json!({ "kind": "periodic_graphs", "graphs": graphs })
            }
            FamilyKind::Explicit { prefix, tail } => {
                serde_json::json!({ "kind": "explicit", "prefix": prefix, "tail": tail })
            }
            FamilyKind::Derived { base, rule } => {
                let rule = match rule {
                    KeepRule::BelowThreshold(t) => {
                        serde_json::json!({ "rule": "below_threshold", "threshold": t })
                    }
                    KeepRule::ResidueClasses { modulus, residues } => serde_json::json!({
                        "rule": "residue_classes", "modulus": modulus, "residues": residues,
                    }),
                };
                serde_json::json!({ "kind": "derived", "base": base, "rule": rule })
            }
        };
        if let Some(w) = self.window {
            v.as_object_mut().expect("families serialize to objects").insert("window".into(), w.into());
        }
        v
    }

    fn from_value(v: &serde_json::Value) -> Result<GraphFamily> {
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::InvalidFamily("missing kind tag".into()))?;
        let seq_field = |name: &str| -> Result<SeqNat> {
            let sv = v
                .get(name)
                .ok_or_else(|| Error::InvalidFamily(format!("{kind}: missing field {name}")))?;
            serde_json::from_value(sv.clone())
                .map_err(|e| Error::InvalidFamily(format!("{kind}.{name}: {e}")))
        };
        let graphs_field = |name: &str| -> Result<Vec<Graph>> {
            let gv = v
                .get(name)
                .ok_or_else(|| Error::InvalidFamily(format!("{kind}: missing field {name}")))?;
            serde_json::from_value(gv.clone())
                .map_err(|e| Error::InvalidFamily(format!("{kind}.{name}: {e}")))
        };
        let family = match kind {
            "constant" => {
                let graph = v
                    .get("graph")
                    .ok_or_else(|| Error::InvalidFamily("constant: missing graph".into()))?;
                let graph: Graph = serde_json::from_value(graph.clone())
                    .map_err(|e| Error::InvalidFamily(format!("constant.graph: {e}")))?;
                GraphFamily::constant(graph)
            }
            "infinite_path" => GraphFamily::infinite_path(),
            "growing_path" => GraphFamily::growing_path(seq_field("size")?)?,
            "growing_cycle" => GraphFamily::growing_cycle(seq_field("size")?)?,
            "growing_complete" => GraphFamily::growing_complete(seq_field("size")?)?,
            "periodic_graphs" => GraphFamily::periodic_graphs(graphs_field("graphs")?)?,
            "explicit" => {
                let tail = v
                    .get("tail")
                    .ok_or_else(|| Error::InvalidFamily("explicit: missing tail".into()))?;
                GraphFamily::explicit(graphs_field("prefix")?, GraphFamily::from_value(tail)?)?
            }
            "derived" => {
                let base = v
                    .get("base")
                    .ok_or_else(|| Error::InvalidFamily("derived: missing base".into()))?;
                let rv = v
                    .get("rule")
                    .ok_or_else(|| Error::InvalidFamily("derived: missing rule".into()))?;
                let rule_kind = rv
                    .get("rule")
                    .and_then(|r| r.as_str())
                    .ok_or_else(|| Error::InvalidFamily("derived: missing rule tag".into()))?;
                let rule = match rule_kind {
                    "below_threshold" => {
                        let t = rv.get("threshold").ok_or_else(|| {
                            Error::InvalidFamily("below_threshold: missing threshold".into())
                        })?;
                        KeepRule::BelowThreshold(
                            serde_json::from_value(t.clone()).map_err(|e| {
                                Error::InvalidFamily(format!("below_threshold.threshold: {e}"))
                            })?,
                        )
                    }
                    "residue_classes" => {
                        let modulus = rv.get("modulus").and_then(|m| m.as_u64()).ok_or_else(
                            || Error::InvalidFamily("residue_classes: missing modulus".into()),
                        )?;
                        let residues = rv
                            .get("residues")
                            .and_then(|r| r.as_array())
                            .ok_or_else(|| {
                                Error::InvalidFamily("residue_classes: missing residues".into())
                            })?
                            .iter()
                            .map(|x| {
                                x.as_u64().ok_or_else(|| {
                                    Error::InvalidFamily(
                                        "residue_classes: residues must be naturals".into(),
                                    )
                                })
                            })
                            .collect::<Result<BTreeSet<u64>>>()?;
                        KeepRule::ResidueClasses { modulus, residues }
                    }
                    other => {
                        return Err(Error::InvalidFamily(format!("unknown rule {other:?}")))
                    }
                };
                GraphFamily::derived(GraphFamily::from_value(base)?, rule)?
            }
            other => return Err(Error::InvalidFamily(format!("unknown kind {other:?}"))),
        };
        let window = match v.get("window") {
            None => None,
            Some(w) => Some(w.as_u64().ok_or_else(|| {
                Error::InvalidFamily("window must be a natural number".into())
            })?),
        };
        family.with_window(window).map_err(|e| match e {
            Error::InvalidConfig(msg) => Error::InvalidFamily(msg),
            other => other,
        })
    }
}

impl Serialize for GraphFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<GraphFamily, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        GraphFamily::from_value(&v).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn growing_path(a: u64, b: u64) -> GraphFamily {
        GraphFamily::growing_path(SeqNat::affine(a, b)).unwrap()
    }

    #[test]
    fn materialization_matches_the_kind() {
        let p = growing_path(1, 1);
        assert_eq!(p.graph_at(0).unwrap(), Graph::path_graph(1));
        assert_eq!(p.graph_at(5).unwrap(), Graph::path_graph(6));

        let c = GraphFamily::growing_cycle(SeqNat::affine(1, 3)).unwrap();
        assert_eq!(c.graph_at(2).unwrap(), Graph::cycle_graph(5).unwrap());

        let k = GraphFamily::growing_complete(SeqNat::affine(2, 1)).unwrap();
        assert_eq!(k.graph_at(3).unwrap(), Graph::complete_graph(7));

        let alternating = GraphFamily::periodic_graphs(vec![
            Graph::complete_graph(3),
            Graph::path_graph(2),
        ])
        .unwrap();
        assert_eq!(alternating.graph_at(4).unwrap(), Graph::complete_graph(3));
        assert_eq!(alternating.graph_at(7).unwrap(), Graph::path_graph(2));

        assert!(matches!(
            GraphFamily::infinite_path().graph_at(0),
            Err(Error::Unmaterializable)
        ));
    }

    #[test]
    fn explicit_prefixes_override_the_tail() {
        let fam = GraphFamily::explicit(
            vec![Graph::complete_graph(4), Graph::path_graph(2)],
            growing_path(1, 1),
        )
        .unwrap();
        assert_eq!(fam.graph_at(0).unwrap(), Graph::complete_graph(4));
        assert_eq!(fam.graph_at(1).unwrap(), Graph::path_graph(2));
        assert_eq!(fam.graph_at(2).unwrap(), Graph::path_graph(3));
    }

    #[test]
    fn derived_families_induce_subgraphs() {
        let base = GraphFamily::growing_complete(SeqNat::affine(1, 4)).unwrap();
        let evens = GraphFamily::derived(
            base,
            KeepRule::ResidueClasses { modulus: 2, residues: [0].into() },
        )
        .unwrap();
        // K_6 at n = 2 keeps vertices 0, 2, 4: a triangle.
        let g = evens.graph_at(2).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);

        let below = GraphFamily::derived(
            growing_path(1, 10),
            KeepRule::BelowThreshold(SeqNat::constant(4)),
        )
        .unwrap();
        // Keeping ids < 4 of a long path leaves P_4.
        assert_eq!(below.graph_at(7).unwrap(), Graph::path_graph(4));
    }

    #[test]
    fn size_validation_rejects_degenerate_families() {
        assert!(GraphFamily::growing_cycle(SeqNat::constant(2)).is_err());
        assert!(GraphFamily::growing_cycle(
            SeqNat::table_with_tail(vec![1], SeqNat::affine(1, 3)).unwrap()
        )
        .is_err());
        assert!(GraphFamily::growing_path(SeqNat::constant(0)).is_err());
        assert!(GraphFamily::growing_path(SeqNat::affine(1, 1)).is_ok());
        assert!(GraphFamily::periodic_graphs(vec![]).is_err());
        assert!(GraphFamily::derived(
            GraphFamily::infinite_path(),
            KeepRule::ResidueClasses { modulus: 2, residues: [0].into() },
        )
        .is_err());
    }

    #[test]
    fn validity_tracks_growth() {
        let fam = growing_path(1, 1); // sizes 1, 2, 3, ...
        // id n-3 clamps to 0 early; always below n+1 except nowhere — valid
        // everywhere.
        let id = SeqNat::affine(1, 0).monus(&SeqNat::constant(3)).unwrap();
        assert!(fam.vertex_validity_set(&id).unwrap().is_full());
        // Constant id 5 is valid once the path has 6 vertices: n >= 5.
        let five = fam.vertex_validity_set(&SeqNat::constant(5)).unwrap();
        for n in 0..32 {
            assert_eq!(five.contains(n), n >= 5);
        }
        // Ids beyond a constant graph are valid nowhere.
        let fixed = GraphFamily::constant(Graph::complete_graph(4));
        assert!(fixed.vertex_validity_set(&SeqNat::constant(9)).unwrap().is_empty());
        assert!(fixed.vertex_validity_set(&SeqNat::constant(3)).unwrap().is_full());
        // A growing id leaves any fixed graph.
        let escape = fixed.vertex_validity_set(&SeqNat::affine(1, 0)).unwrap();
        for n in 0..16 {
            assert_eq!(escape.contains(n), n <= 3);
        }
    }

    #[test]
    fn adjacency_certificates_match_materialization() {
        let maps = vec![
            SeqNat::constant(0),
            SeqNat::constant(1),
            SeqNat::constant(2),
            SeqNat::affine(1, 0),
            SeqNat::affine(1, 1),
            SeqNat::affine(1, 0).monus(&SeqNat::constant(1)).unwrap(),
            SeqNat::periodic(vec![0, 2]).unwrap(),
        ];
        let families = vec![
            growing_path(1, 1),
            GraphFamily::growing_cycle(SeqNat::affine(1, 3)).unwrap(),
            GraphFamily::growing_complete(SeqNat::affine(1, 1)).unwrap(),
            GraphFamily::constant(Graph::cycle_graph(5).unwrap()),
            GraphFamily::periodic_graphs(vec![
                Graph::complete_graph(4),
                Graph::path_graph(3),
            ])
            .unwrap(),
            GraphFamily::explicit(vec![Graph::complete_graph(3)], growing_path(1, 2)).unwrap(),
            GraphFamily::derived(
                GraphFamily::growing_complete(SeqNat::affine(1, 1)).unwrap(),
                KeepRule::ResidueClasses { modulus: 2, residues: [0].into() },
            )
            .unwrap(),
        ];
        for fam in &families {
            for x in &maps {
                for y in &maps {
                    let adj = fam.adjacency_set(x, y).unwrap();
                    for n in 0..48 {
                        let g = fam.graph_at(n).unwrap();
                        let (a, b) = (VertexId(x.eval(n)), VertexId(y.eval(n)));
                        let expected = a != b && g.contains_edge(a, b);
                        assert_eq!(
                            adj.contains(n),
                            expected,
                            "family {:?} maps {x}, {y} at {n}",
                            fam.kind
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn infinite_path_adjacency_is_symbolic() {
        let fam = GraphFamily::infinite_path();
        let k = SeqNat::affine(1, 0);
        let succ = k.add(&SeqNat::constant(1)).unwrap();
        assert!(fam.adjacency_set(&k, &succ).unwrap().is_full());
        let skip = k.add(&SeqNat::constant(2)).unwrap();
        assert!(fam.adjacency_set(&k, &skip).unwrap().is_empty());
        assert!(fam.vertex_validity_set(&SeqNat::poly2(1, 0, 0)).unwrap().is_full());
    }

    #[test]
    fn count_forms_match_materialization() {
        let families = vec![
            growing_path(1, 1),
            GraphFamily::growing_cycle(SeqNat::affine(2, 3)).unwrap(),
            GraphFamily::growing_complete(SeqNat::affine(1, 3)).unwrap(),
            GraphFamily::constant(Graph::cycle_graph(6).unwrap()),
            GraphFamily::periodic_graphs(vec![
                Graph::complete_graph(4),
                Graph::path_graph(2),
            ])
            .unwrap(),
            GraphFamily::explicit(vec![Graph::complete_graph(4)], growing_path(1, 1)).unwrap(),
        ];
        for fam in &families {
            let p = fam.vertex_count_form().unwrap().expect("finite family");
            let q = fam.edge_count_form().unwrap().expect("representable");
            let dmax = fam.max_degree_form().unwrap().expect("representable");
            let dmin = fam.min_degree_form().unwrap().expect("representable");
            for n in 0..40 {
                let g = fam.graph_at(n).unwrap();
                assert_eq!(p.eval(n), g.vertex_count() as u64, "p at {n}");
                assert_eq!(q.eval(n), g.edge_count() as u64, "q at {n}");
                assert_eq!(dmax.eval(n), g.max_degree(), "max degree at {n}");
                let want_min =
                    g.vertices().map(|v| g.degree(v).unwrap() as u64).min().unwrap_or(0);
                assert_eq!(dmin.eval(n), want_min, "min degree at {n}");
            }
        }
    }

    #[test]
    fn complete_edge_count_is_triangular() {
        let fam = GraphFamily::growing_complete(SeqNat::affine(1, 3)).unwrap();
        let q = fam.edge_count_form().unwrap().unwrap();
        for n in 0..64 {
            let m = n + 3;
            assert_eq!(q.eval(n), m * (m - 1) / 2);
        }
        // A quadratic size map pushes the count out of the family.
        let too_fast = GraphFamily::growing_complete(SeqNat::poly2(1, 0, 1)).unwrap();
        assert_eq!(too_fast.edge_count_form().unwrap(), None);
    }

    #[test]
    fn metric_forms_match_materialization() {
        let cases: Vec<GraphFamily> = vec![
            growing_path(2, 4), // even sizes: radius representable
            GraphFamily::growing_cycle(SeqNat::affine(2, 4)).unwrap(),
            GraphFamily::growing_complete(SeqNat::affine(1, 1)).unwrap(),
            GraphFamily::constant(Graph::path_graph(5)),
        ];
        for fam in &cases {
            let d = fam.diameter_form().unwrap().expect("representable diameter");
            let r = fam.radius_form().unwrap().expect("representable radius");
            for n in 0..24 {
                let m = fam.graph_at(n).unwrap().metrics().unwrap();
                assert_eq!(d.eval(n), m.diameter, "diameter at {n}");
                assert_eq!(r.eval(n), m.radius, "radius at {n}");
            }
        }
        // Odd/even alternating sizes make floor(size/2) unrepresentable.
        let alternating = growing_path(1, 4);
        assert_eq!(alternating.radius_form().unwrap(), None);
        // But the diameter size - 1 still exists.
        assert!(alternating.diameter_form().unwrap().is_some());
    }

    #[test]
    fn json_round_trips() {
        let families = vec![
            GraphFamily::constant(Graph::complete_graph(4)),
            GraphFamily::infinite_path(),
            growing_path(1, 1).with_window(Some(128)).unwrap(),
            GraphFamily::growing_cycle(SeqNat::affine(1, 3)).unwrap(),
            GraphFamily::growing_complete(SeqNat::affine(2, 1)).unwrap(),
            GraphFamily::periodic_graphs(vec![Graph::path_graph(2), Graph::cycle_graph(4).unwrap()])
                .unwrap(),
            GraphFamily::explicit(vec![Graph::complete_graph(3)], growing_path(1, 1)).unwrap(),
            GraphFamily::derived(
                GraphFamily::growing_complete(SeqNat::affine(1, 2)).unwrap(),
                KeepRule::BelowThreshold(SeqNat::affine(1, 1)),
            )
            .unwrap(),
            GraphFamily::derived(
                GraphFamily::growing_complete(SeqNat::affine(1, 2)).unwrap(),
                KeepRule::ResidueClasses { modulus: 3, residues: [0, 2].into() },
            )
            .unwrap(),
        ];
        for fam in families {
            let text = serde_json::to_string(&fam).unwrap();
            let back: GraphFamily = serde_json::from_str(&text).unwrap();
            assert_eq!(back, fam, "round trip of {text}");
        }
        let text = serde_json::to_string(&growing_path(1, 1)).unwrap();
        assert_eq!(text, r#"{"kind":"growing_path","size":{"a":1,"b":1,"form":"affine"}}"#);
        for bad in [
            r#"{"kind":"growing_cycle","size":{"form":"affine","a":1,"b":0}}"#,
            r#"{"kind":"nonsense"}"#,
            r#"{"kind":"growing_path","size":{"form":"affine","a":1,"b":1},"window":4}"#,
        ] {
            assert!(serde_json::from_str::<GraphFamily>(bad).is_err(), "accepted {bad}");
        }
    }

    /// Checks an exact truth set against direct evaluation on a window.
    fn assert_truth(fam: &GraphFamily, pred: &dyn Fn(&Graph) -> bool, exact: bool) -> IndexSet {
        let truth = fam.truth_set(64, pred).unwrap();
        assert_eq!(truth.is_exact(), exact, "exactness of {truth:?}");
        let set = truth.set().unwrap().clone();
        for n in 0..64 {
            assert_eq!(
                set.contains(n),
                pred(&fam.graph_at(n).unwrap()),
                "index {n} of {set}"
            );
        }
        set
    }

    #[test]
    fn size_driven_truth_sets_are_exact() {
        let eulerian = |g: &Graph| g.is_eulerian().unwrap_or(false);
        // Complete graphs are eulerian exactly at odd sizes >= 3, and the
        // size map n + 3 is odd exactly at even n.
        let k = GraphFamily::growing_complete(SeqNat::affine(1, 3)).unwrap();
        let set = assert_truth(&k, &eulerian, true);
        assert_eq!(set, IndexSet::periodic(2, [0]).unwrap());

        // Threshold predicates produce cofinite (or finite) sets.
        let p = growing_path(1, 1);
        let big = assert_truth(&p, &|g: &Graph| g.vertex_count() >= 5, true);
        assert_eq!(big, IndexSet::finite([0, 1, 2, 3]).complement());
        let small = assert_truth(&p, &|g: &Graph| g.vertex_count() < 3, true);
        assert_eq!(small, IndexSet::finite([0, 1]));

        // Cycles alternate eulerian-circuit parity in their length; the
        // circuit itself always exists, so probe an odd-size predicate.
        let c = GraphFamily::growing_cycle(SeqNat::affine(3, 4)).unwrap();
        let odd = assert_truth(&c, &|g: &Graph| g.vertex_count() % 2 == 1, true);
        assert_eq!(odd, IndexSet::periodic(2, [1]).unwrap());
    }

    #[test]
    fn bounded_sizes_decide_by_value() {
        let size = SeqNat::periodic(vec![3, 6]).unwrap();
        let c = GraphFamily::growing_cycle(size).unwrap();
        let set = assert_truth(&c, &|g: &Graph| g.vertex_count() == 3, true);
        assert_eq!(set, IndexSet::periodic(2, [0]).unwrap());
    }

    #[test]
    fn fixed_lists_read_truth_off_membership() {
        let alternating = GraphFamily::periodic_graphs(vec![
            Graph::complete_graph(3),
            Graph::path_graph(2),
        ])
        .unwrap();
        let set = assert_truth(&alternating, &|g: &Graph| g.is_eulerian().unwrap_or(false), true);
        assert_eq!(set, IndexSet::periodic(2, [0]).unwrap());

        let single = GraphFamily::constant(Graph::cycle_graph(5).unwrap());
        let set = assert_truth(&single, &|g: &Graph| g.is_connected(), true);
        assert_eq!(set, IndexSet::full());
    }

    #[test]
    fn explicit_prefixes_override_truth() {
        let fam = GraphFamily::explicit(
            vec![Graph::complete_graph(4)],
            GraphFamily::growing_complete(SeqNat::affine(1, 3)).unwrap(),
        )
        .unwrap();
        // K_4 is not eulerian, so the prefix knocks index 0 out of the evens.
        let set = assert_truth(&fam, &|g: &Graph| g.is_eulerian().unwrap_or(false), true);
        assert!(!set.contains(0));
        assert!(set.contains(2) && set.contains(4) && !set.contains(1));
    }

    #[test]
    fn derived_truth_is_at_best_empirical() {
        let fam = GraphFamily::derived(
            growing_path(1, 1),
            KeepRule::BelowThreshold(SeqNat::affine(1, 1)),
        )
        .unwrap();
        let truth = fam.truth_set(64, &|g: &Graph| g.is_connected()).unwrap();
        assert!(matches!(truth, TruthSet::Empirical(_)));
        assert_eq!(truth.set().unwrap(), &IndexSet::full());

        assert!(matches!(
            GraphFamily::infinite_path().truth_set(64, &|g: &Graph| g.is_connected()),
            Err(Error::Unmaterializable)
        ));
    }
}
