//! The ultrapower of a graph family: nonstandard vertices and edges as
//! equivalence classes of index maps, and the graph-theoretic operations on
//! them, each reduced to per-index finite computations plus one filter
//! decision.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{FamilyKind, GraphFamily, KeepRule, TruthSet};
use crate::graph::{Graph, HamiltonianCriteria, Path, VertexId};
use crate::hypernat::HyperNat;
use crate::index_set::IndexSet;
use crate::seq::SeqNat;
use crate::ultrafilter::Ultrafilter;

/// Window used for empirical fallbacks and witnesses when neither the caller
/// nor the family suggests one.
pub const DEFAULT_WINDOW: u64 = 64;

/// A graph family together with an ultrafilter point: the ambient structure
/// in which nonstandard vertices, edges, and truth values live.
#[derive(Debug, Clone)]
pub struct UltraGraph {
    family: GraphFamily,
    filter: Ultrafilter,
    window: u64,
}

/// A nonstandard vertex: the class of an index map `n -> vertex id in G_n`.
/// Its validity set is decided large at construction, so operations may treat
/// the map as a vertex almost everywhere.
#[derive(Debug, Clone)]
pub struct NsVertex {
    index_map: SeqNat,
    family: GraphFamily,
}

impl NsVertex {
    #[must_use]
    pub fn index_map(&self) -> &SeqNat {
        &self.index_map
    }
}

/// A nonstandard edge between two vertex classes, carrying the exact set of
/// indices at which the endpoint values really form an edge of `G_n`.
#[derive(Debug, Clone)]
pub struct NsEdge {
    endpoints: (NsVertex, NsVertex),
    certificate: IndexSet,
}

impl NsEdge {
    #[must_use]
    pub fn endpoints(&self) -> (&NsVertex, &NsVertex) {
        (&self.endpoints.0, &self.endpoints.1)
    }

    /// Indices at which the endpoint values form an edge; decided large.
    #[must_use]
    pub fn certificate(&self) -> &IndexSet {
        &self.certificate
    }
}

/// A hyperfinite path between two vertex classes, represented by its length
/// class plus one materialized per-index witness.
#[derive(Debug, Clone)]
pub struct NsPath {
    pub length: HyperNat,
    /// True when the length exceeds every standard natural.
    pub unlimited: bool,
    /// True when the length sequence was derived symbolically rather than
    /// fitted to a window of observations.
    pub exact: bool,
    /// A shortest path at one concrete index, when one can be materialized.
    pub witness: Option<(u64, Path)>,
}

/// Vertex, edge, and independent-cycle counts of a hyperfinite connected
/// graph, with the circuit-rank identity checked as a class equality.
#[derive(Debug, Clone)]
pub struct NsCounts {
    pub vertices: HyperNat,
    pub edges: HyperNat,
    pub cyclomatic: HyperNat,
    /// cyclomatic + vertices = edges + 1, as an almost-everywhere equality.
    pub identity_holds: bool,
}

/// Radius and diameter classes with the two-sided bound verdict.
#[derive(Debug, Clone)]
pub struct NsMetrics {
    pub radius: HyperNat,
    pub diameter: HyperNat,
    /// radius <= diameter <= 2 * radius, as class inequalities.
    pub bound_ok: bool,
}

/// Summary of per-index greedy colorings under a standard degree bound.
#[derive(Debug, Clone, Serialize)]
pub struct NsColoring {
    /// The standard degree bound the family satisfies almost everywhere.
    pub bound: u64,
    /// Colors used at each window index.
    pub colors_by_index: Vec<u64>,
    pub max_colors_used: u64,
    pub proper_everywhere: bool,
    /// max_colors_used <= bound + 1.
    pub within_bound: bool,
}

impl UltraGraph {
    /// Pairs a family with an ultrafilter point. The window (for empirical
    /// fallbacks and witnesses) comes from the family spec when present.
    #[must_use]
    pub fn new(family: GraphFamily, filter: Ultrafilter) -> UltraGraph {
        let window = family.suggested_window().unwrap_or(DEFAULT_WINDOW);
        UltraGraph { family, filter, window }
    }

    #[must_use]
    pub fn with_window(mut self, window: u64) -> UltraGraph {
        self.window = window.max(1);
        self
    }

    #[must_use]
    pub fn family(&self) -> &GraphFamily {
        &self.family
    }

    #[must_use]
    pub fn filter(&self) -> &Ultrafilter {
        &self.filter
    }

    #[must_use]
    pub fn window(&self) -> u64 {
        self.window
    }

    /// Forms the vertex class of an index map. Fails unless the map lands on
    /// a valid vertex of `G_n` almost everywhere.
    pub fn vertex(&self, index_map: SeqNat) -> Result<NsVertex> {
        let validity = self.family.vertex_validity_set(&index_map)?;
        if !self.filter.holds(&validity)? {
            return Err(Error::InvalidIndexMap);
        }
        Ok(NsVertex { index_map, family: self.family.clone() })
    }

    /// Class equality: the maps agree on a large set of indices.
    pub fn vertex_eq(&self, x: &NsVertex, y: &NsVertex) -> Result<bool> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        self.filter.holds(&x.index_map.equal_set(&y.index_map)?)
    }

    /// Forms the edge class of two distinct vertex classes, or reports that
    /// the pair is a non-edge. Exactly one of the adjacency set and its
    /// complement is large, so the answer never depends on representatives.
    pub fn edge(&self, x: &NsVertex, y: &NsVertex) -> Result<Option<NsEdge>> {
        if self.vertex_eq(x, y)? {
            return Err(Error::IdenticalVertices);
        }
        let certificate = self.family.adjacency_set(&x.index_map, &y.index_map)?;
        if self.filter.holds(&certificate)? {
            Ok(Some(NsEdge { endpoints: (x.clone(), y.clone()), certificate }))
        } else {
            Ok(None)
        }
    }

    /// True iff the two classes form a nonstandard edge.
    pub fn adjacent(&self, x: &NsVertex, y: &NsVertex) -> Result<bool> {
        Ok(self.edge(x, y)?.is_some())
    }

    /// True iff `x` coincides with one of the edge's endpoints almost
    /// everywhere.
    pub fn incident(&self, x: &NsVertex, b: &NsEdge) -> Result<bool> {
        self.check_vertex(x)?;
        let (u, v) = (&b.endpoints.0, &b.endpoints.1);
        let hits = x
            .index_map
            .equal_set(&u.index_map)?
            .union(&x.index_map.equal_set(&v.index_map)?)?;
        self.filter.holds(&hits)
    }

    /// True iff `G_n` is connected almost everywhere.
    pub fn connected(&self) -> Result<bool> {
        // The symbolic one-way infinite path is connected at every index.
        if matches!(self.family.kind(), FamilyKind::InfinitePath) {
            return Ok(true);
        }
        let truth = self.family.truth_set(self.window, &|g| g.is_connected())?;
        self.decide_truth("connectivity", &truth)
    }

    /// Vertex/edge/cyclomatic counts of a hyperfinite connected graph and
    /// the circuit-rank identity `r + p = q + 1` as a class equality.
    pub fn counts(&self) -> Result<NsCounts> {
        self.require_hyperfinite_connected(2)?;
        let (p, _) = self.form_or_fit(self.family.vertex_count_form()?, &|g| {
            g.vertex_count() as u64
        })?;
        let (q, _) = self.form_or_fit(self.family.edge_count_form()?, &|g| {
            g.edge_count() as u64
        })?;
        // Edges outside a spanning tree: q - (p - 1) wherever G_n is
        // connected; the clamp only acts on a null set.
        let r = q.add(&SeqNat::constant(1))?.monus(&p)?;
        let vertices = HyperNat::new(p, self.filter.clone());
        let edges = HyperNat::new(q, self.filter.clone());
        let cyclomatic = HyperNat::new(r, self.filter.clone());
        let identity_holds = cyclomatic
            .add(&vertices)?
            .eq_ae(&edges.add(&HyperNat::standard(1, self.filter.clone()))?)?;
        Ok(NsCounts { vertices, edges, cyclomatic, identity_holds })
    }

    /// Radius and diameter classes with the bound `R <= D <= 2R`.
    pub fn metrics(&self) -> Result<NsMetrics> {
        self.require_hyperfinite_connected(1)?;
        let (r, _) = self.form_or_fit(self.family.radius_form()?, &|g| {
            g.metrics().map(|m| m.radius).unwrap_or(0)
        })?;
        let (d, _) = self.form_or_fit(self.family.diameter_form()?, &|g| {
            g.metrics().map(|m| m.diameter).unwrap_or(0)
        })?;
        let radius = HyperNat::new(r, self.filter.clone());
        let diameter = HyperNat::new(d, self.filter.clone());
        let bound_ok = radius.le_ae(&diameter)? && diameter.le_ae(&radius.add(&radius)?)?;
        Ok(NsMetrics { radius, diameter, bound_ok })
    }

    /// True iff every degree of `G_n` is even almost everywhere — the
    /// transferred Euler condition for a connected family.
    pub fn eulerian(&self) -> Result<bool> {
        if !self.connected()? {
            return Err(Error::NotConnected);
        }
        // Vertex 0 of the one-way infinite path has degree 1 at every index.
        if matches!(self.family.kind(), FamilyKind::InfinitePath) {
            return Ok(false);
        }
        let truth = self.family.truth_set(self.window, &all_degrees_even)?;
        self.decide_truth("even-degree condition", &truth)
    }

    /// The three degree-based Hamiltonicity criteria, each decided almost
    /// everywhere.
    pub fn hamiltonian_criteria(&self) -> Result<HamiltonianCriteria> {
        self.require_hyperfinite_connected(3)?;
        let flag = |pick: fn(&HamiltonianCriteria) -> bool| -> Result<bool> {
            let truth = self.family.truth_set(self.window, &|g| {
                g.hamiltonian_criteria().map(|c| pick(&c)).unwrap_or(false)
            })?;
            self.decide_truth("Hamiltonicity criterion", &truth)
        };
        Ok(HamiltonianCriteria {
            dirac: flag(|c| c.dirac)?,
            ore: flag(|c| c.ore)?,
            posa: flag(|c| c.posa)?,
        })
    }

    /// Greedy colorings across the window under a standard degree bound `k`;
    /// the transferred statement promises `k + 1` colors suffice.
    pub fn coloring(&self, k: u64) -> Result<NsColoring> {
        let degree_ok = match self.family.max_degree_form()? {
            Some(d) => {
                let within = d.compare_pointwise(&SeqNat::constant(k))?.greater.complement();
                self.filter.holds(&within)?
            }
            None => {
                let truth =
                    self.family.truth_set(self.window, &|g| g.max_degree() <= k)?;
                self.decide_truth("degree bound", &truth)?
            }
        };
        if !degree_ok {
            return Err(Error::DegreeBoundViolated { bound: k });
        }
        let mut colors_by_index = Vec::with_capacity(self.window as usize);
        let mut proper_everywhere = true;
        for n in 0..self.window {
            let g = self.family.graph_at(n)?;
            let coloring = g.greedy_coloring();
            proper_everywhere &= coloring.is_proper(&g);
            colors_by_index.push(coloring.colors_used);
        }
        let max_colors_used = colors_by_index.iter().copied().max().unwrap_or(0);
        Ok(NsColoring {
            bound: k,
            colors_by_index,
            max_colors_used,
            proper_everywhere,
            within_bound: max_colors_used <= k + 1,
        })
    }

    /// A hyperfinite shortest path between two distinct vertex classes: its
    /// length class, limitedness, and one materialized witness.
    pub fn path(&self, x: &NsVertex, y: &NsVertex) -> Result<NsPath> {
        if !self.connected()? {
            return Err(Error::NotConnected);
        }
        if self.vertex_eq(x, y)? {
            return Err(Error::IdenticalVertices);
        }
        let (seq, exact) = match exact_length_form(&self.family, &x.index_map, &y.index_map) {
            Ok(Some(seq)) => (seq, true),
            Ok(None) | Err(Error::FormOverflow(_)) => {
                let values: Vec<u64> = (0..self.window)
                    .map(|n| self.distance_at(n, &x.index_map, &y.index_map))
                    .collect::<Result<_>>()?;
                match SeqNat::fit(&values) {
                    Some(seq) => (seq, false),
                    None => return Err(Error::LengthFormOverflow { window: values }),
                }
            }
            Err(e) => return Err(e),
        };
        let length = HyperNat::new(seq, self.filter.clone());
        let unlimited = length.is_unlimited();
        let witness = self.path_witness(x, y)?;
        Ok(NsPath { length, unlimited, exact, witness })
    }

    /// Restricts the family by a per-index vertex-keeping rule, yielding the
    /// ultrapower of the induced subgraphs over the same filter point.
    pub fn subgraph(&self, rule: KeepRule) -> Result<UltraGraph> {
        let family = match (self.family.kind(), &rule) {
            // Keeping the ids below a threshold cuts the infinite path down
            // to finite initial segments.
            (FamilyKind::InfinitePath, KeepRule::BelowThreshold(t)) => {
                GraphFamily::growing_path(t.clone())?
            }
            (FamilyKind::InfinitePath, KeepRule::ResidueClasses { .. }) => {
                return Err(Error::UnsupportedRule(
                    "residue-class restriction of the infinite path is not a finite-or-symbolic family".into(),
                ));
            }
            _ => GraphFamily::derived(self.family.clone(), rule)?,
        };
        Ok(UltraGraph { family, filter: self.filter.clone(), window: self.window })
    }

    fn check_vertex(&self, x: &NsVertex) -> Result<()> {
        if x.family != self.family {
            return Err(Error::FamilyMismatch);
        }
        Ok(())
    }

    fn decide_truth(&self, what: &str, truth: &TruthSet) -> Result<bool> {
        match truth.set() {
            Some(s) => self.filter.holds(s),
            None => Err(Error::Undecidable(format!(
                "{what}: the per-index truth pattern matched no supported set form"
            ))),
        }
    }

    /// Connectivity plus the hyperfinite class conditions shared by the
    /// counting/metric/criteria operations: finite graphs with at least
    /// `min_vertices` vertices almost everywhere.
    fn require_hyperfinite_connected(&self, min_vertices: u64) -> Result<()> {
        if !self.connected()? {
            return Err(Error::NotConnected);
        }
        if !self.family.finite_everywhere() {
            return Err(Error::NotInCf("the per-index graphs must be finite".into()));
        }
        if !self.vertex_count_at_least(min_vertices)? {
            return Err(Error::NotInCf(format!(
                "needs at least {min_vertices} vertices almost everywhere"
            )));
        }
        Ok(())
    }

    pub(crate) fn vertex_count_at_least(&self, k: u64) -> Result<bool> {
        if let Some(p) = self.family.vertex_count_form()? {
            let below = p.compare_pointwise(&SeqNat::constant(k))?.less;
            return self.filter.holds(&below.complement());
        }
        let truth =
            self.family.truth_set(self.window, &|g| g.vertex_count() as u64 >= k)?;
        self.decide_truth("vertex count threshold", &truth)
    }

    /// A symbolic sequence for a per-index quantity: the exact form when the
    /// family has one, otherwise a form fitted to (and checked against) the
    /// window of observed values.
    fn form_or_fit(
        &self,
        form: Option<SeqNat>,
        value_at: &dyn Fn(&Graph) -> u64,
    ) -> Result<(SeqNat, bool)> {
        if let Some(form) = form {
            return Ok((form, true));
        }
        let values: Vec<u64> = (0..self.window)
            .map(|n| Ok(value_at(&self.family.graph_at(n)?)))
            .collect::<Result<_>>()?;
        match SeqNat::fit(&values) {
            Some(seq) => Ok((seq, false)),
            None => Err(Error::LengthFormOverflow { window: values }),
        }
    }

    /// Per-index shortest-path distance between the maps' values, with 0 at
    /// the (null-set) indices where an endpoint is invalid or unreachable.
    fn distance_at(&self, n: u64, x: &SeqNat, y: &SeqNat) -> Result<u64> {
        let (a, b) = (x.eval(n), y.eval(n));
        if matches!(self.family.kind(), FamilyKind::InfinitePath) {
            return Ok(a.abs_diff(b));
        }
        let g = self.family.graph_at(n)?;
        let (a, b) = (VertexId(a), VertexId(b));
        if a == b || !g.contains_vertex(a) || !g.contains_vertex(b) {
            return Ok(0);
        }
        Ok(g.path_between(a, b)?.map_or(0, |p| p.length() as u64))
    }

    /// First window index with a materializable shortest path between the
    /// maps' values.
    fn path_witness(&self, x: &NsVertex, y: &NsVertex) -> Result<Option<(u64, Path)>> {
        if matches!(self.family.kind(), FamilyKind::InfinitePath) {
            return Ok(None);
        }
        for n in 0..self.window {
            let g = self.family.graph_at(n)?;
            let (a, b) = (VertexId(x.index_map.eval(n)), VertexId(y.index_map.eval(n)));
            if a == b || !g.contains_vertex(a) || !g.contains_vertex(b) {
                continue;
            }
            if let Some(p) = g.path_between(a, b)? {
                return Ok(Some((n, p)));
            }
        }
        Ok(None)
    }
}

fn all_degrees_even(g: &Graph) -> bool {
    g.vertices().all(|v| g.degree(v).expect("iterating own vertices").is_multiple_of(2))
}

/// The shortest-path distance sequence between two index maps, symbolically,
/// for the family kinds whose geometry has a closed form. `Ok(None)` when no
/// exact route exists; the caller falls back to fitting a window.
fn exact_length_form(family: &GraphFamily, x: &SeqNat, y: &SeqNat) -> Result<Option<SeqNat>> {
    match family.kind() {
        // Distance on a path is |x - y|; one of the two differences is 0
        // pointwise, so their sum is the absolute difference.
        FamilyKind::InfinitePath | FamilyKind::GrowingPath { .. } => {
            Ok(Some(x.monus(y)?.add(&y.monus(x)?)?))
        }
        FamilyKind::GrowingCycle { size } => {
            let delta = x.monus(y)?.add(&y.monus(x)?)?;
            delta.pointwise_min(&size.monus(&delta)?)
        }
        // Complete graphs: 1 between distinct valid vertices.
        FamilyKind::GrowingComplete { .. } => {
            Ok(Some(SeqNat::indicator(&x.equal_set(y)?, 0, 1)?))
        }
        FamilyKind::Constant(g) => fixed_rotation_length(std::slice::from_ref(g), x, y),
        FamilyKind::PeriodicGraphs(graphs) => fixed_rotation_length(graphs, x, y),
        FamilyKind::Explicit { prefix, tail } => {
            let Some(tail_form) = exact_length_form(tail, x, y)? else {
                return Ok(None);
            };
            let overrides: Vec<u64> = prefix
                .iter()
                .enumerate()
                .map(|(n, g)| distance_in(g, x.eval(n as u64), y.eval(n as u64)))
                .collect::<Result<_>>()?;
            Ok(Some(tail_form.with_prefix_overrides(&overrides)?))
        }
        FamilyKind::Derived { .. } => Ok(None),
    }
}

/// Distance sequence over a fixed rotation of graphs, assembled from one
/// indicator per (graph, value-of-x, value-of-y) combination. Exact because
/// equality sets account for the maps' prefixes pointwise; indices in the
/// null set where a value is invalid or unreachable contribute 0.
fn fixed_rotation_length(graphs: &[Graph], x: &SeqNat, y: &SeqNat) -> Result<Option<SeqNat>> {
    let (Some(xs), Some(ys)) = (x.bounded_values(), y.bounded_values()) else {
        // A map valid a.e. in fixed graphs is eventually bounded, so this
        // only happens for degenerate inputs the caller will re-check.
        return Ok(None);
    };
    let k = graphs.len() as u64;
    let mut total = SeqNat::constant(0);
    for (j, g) in graphs.iter().enumerate() {
        let graph_here = IndexSet::periodic(k, [j as u64])?;
        for &a in &xs {
            for &b in &ys {
                let d = distance_in(g, a, b)?;
                if d == 0 {
                    continue;
                }
                let here = x
                    .equal_set(&SeqNat::constant(a))?
                    .intersection(&y.equal_set(&SeqNat::constant(b))?)?
                    .intersection(&graph_here)?;
                total = total.add(&SeqNat::indicator(&here, d, 0)?)?;
            }
        }
    }
    // Prefix transients of the maps can hold values outside the eventual
    // ranges; patch them in pointwise.
    let span = x.prefix_len().max(y.prefix_len());
    if span > 0 {
        let overrides: Vec<u64> = (0..span)
            .map(|n| distance_in(&graphs[(n % k) as usize], x.eval(n), y.eval(n)))
            .collect::<Result<_>>()?;
        total = total.with_prefix_overrides(&overrides)?;
    }
    Ok(Some(total))
}

fn distance_in(g: &Graph, a: u64, b: u64) -> Result<u64> {
    let (a, b) = (VertexId(a), VertexId(b));
    if a == b || !g.contains_vertex(a) || !g.contains_vertex(b) {
        return Ok(0);
    }
    Ok(g.path_between(a, b)?.map_or(0, |p| p.length() as u64))
}
