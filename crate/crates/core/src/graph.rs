//! Finite simple graphs and the classical algorithms evaluated per index.
//!
//! Everything here is deterministic: vertices and edges live in ordered sets,
//! searches visit neighbors in ascending id order, and ties are always broken
//! toward the smallest vertex id. Reports built on top of these routines are
//! therefore byte-identical across runs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Vertices above this count are rejected by the exhaustive Hamiltonian search.
pub const BRUTEFORCE_BOUND: usize = 12;

/// Identifier of a vertex. Ids are arbitrary naturals; a graph may use any
/// finite set of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An undirected edge. The invariant `a < b` makes the pair canonical, so the
/// edge set never holds duplicates in disguise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: VertexId,
    b: VertexId,
}

impl Edge {
    /// Builds a canonical edge; rejects self-loops.
    pub fn new(x: VertexId, y: VertexId) -> Result<Edge> {
        if x == y {
            return Err(Error::SameVertex);
        }
        Ok(Edge { a: x.min(y), b: x.max(y) })
    }

    #[must_use]
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.a, self.b)
    }

    #[must_use]
    pub fn touches(&self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint at all.
    #[must_use]
    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        if v == self.a {
            Some(self.b)
        } else if v == self.b {
            Some(self.a)
        } else {
            None
        }
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a.0, self.b.0].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Edge, D::Error> {
        let [x, y] = <[u64; 2]>::deserialize(d)?;
        Edge::new(VertexId(x), VertexId(y)).map_err(|_| D::Error::custom("self-loop edge"))
    }
}

/// A finite simple undirected graph.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    #[must_use]
    pub fn new() -> Graph {
        Graph::default()
    }

    /// Graph with vertices `0..count` and no edges.
    #[must_use]
    pub fn edgeless(count: u64) -> Graph {
        let mut g = Graph::new();
        for v in 0..count {
            g.add_vertex(VertexId(v));
        }
        g
    }

    /// Path graph `P_m` on vertices `0..m` with edges `i — i+1`.
    #[must_use]
    pub fn path_graph(m: u64) -> Graph {
        let mut g = Graph::edgeless(m);
        for v in 1..m {
            g.add_edge(VertexId(v - 1), VertexId(v)).expect("fresh edge");
        }
        g
    }

    /// Cycle graph `C_m` (`m >= 3`) on vertices `0..m`.
    pub fn cycle_graph(m: u64) -> Result<Graph> {
        if m < 3 {
            return Err(Error::InvalidGraph(format!("cycle needs at least 3 vertices, got {m}")));
        }
        let mut g = Graph::path_graph(m);
        g.add_edge(VertexId(0), VertexId(m - 1)).expect("fresh edge");
        Ok(g)
    }

    /// Complete graph `K_m` on vertices `0..m`.
    #[must_use]
    pub fn complete_graph(m: u64) -> Graph {
        let mut g = Graph::edgeless(m);
        for x in 0..m {
            for y in (x + 1)..m {
                g.add_edge(VertexId(x), VertexId(y)).expect("fresh edge");
            }
        }
        g
    }

    /// Builds a graph from explicit parts, validating every edge.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = u64>,
        edges: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Graph> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(VertexId(v));
        }
        for (x, y) in edges {
            g.add_edge(VertexId(x), VertexId(y))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
        self.adj.entry(v).or_default();
    }

    /// Inserts the edge `{x, y}`; rejects self-loops, unknown endpoints, and
    /// duplicates.
    pub fn add_edge(&mut self, x: VertexId, y: VertexId) -> Result<()> {
        for v in [x, y] {
            if !self.vertices.contains(&v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        let e = Edge::new(x, y)?;
        if !self.edges.insert(e) {
            return Err(Error::InvalidGraph(format!("duplicate edge [{x}, {y}]")));
        }
        self.adj.get_mut(&x).expect("endpoint present").insert(y);
        self.adj.get_mut(&y).expect("endpoint present").insert(x);
        Ok(())
    }

    #[must_use]
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    #[must_use]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    #[must_use]
    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    #[must_use]
    pub fn contains_edge(&self, x: VertexId, y: VertexId) -> bool {
        Edge::new(x, y).map(|e| self.edges.contains(&e)).unwrap_or(false)
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    /// Number of edges incident to `x`.
    pub fn degree(&self, x: VertexId) -> Result<usize> {
        self.adj.get(&x).map(BTreeSet::len).ok_or(Error::UnknownVertex(x))
    }

    /// Largest degree; 0 for graphs without edges.
    #[must_use]
    pub fn max_degree(&self) -> u64 {
        self.adj.values().map(|n| n.len() as u64).max().unwrap_or(0)
    }

    /// Breadth-first distances from `src`, visiting neighbors in ascending id
    /// order; unreachable vertices are absent from the map.
    fn bfs(&self, src: VertexId) -> BTreeMap<VertexId, u64> {
        let mut dist = BTreeMap::new();
        dist.insert(src, 0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for w in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(slot) = dist.entry(w) {
                    slot.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Like [`Graph::bfs`] but records the parent of each discovered vertex.
    fn bfs_parents(&self, src: VertexId) -> BTreeMap<VertexId, VertexId> {
        let mut parent = BTreeMap::new();
        let mut seen = BTreeSet::from([src]);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// True iff every pair of vertices is joined by a path. A single vertex
    /// and the empty graph count as connected.
    #[must_use]
    pub fn is_connected(&self) -> bool {
        match self.vertices.iter().next() {
            None => true,
            Some(&start) => self.bfs(start).len() == self.vertices.len(),
        }
    }

    /// A shortest path from `x` to `y`, or `None` when they lie in different
    /// components. Ties break toward smaller vertex ids.
    pub fn path_between(&self, x: VertexId, y: VertexId) -> Result<Option<Path>> {
        for v in [x, y] {
            if !self.vertices.contains(&v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        if x == y {
            return Err(Error::SameVertex);
        }
        let parent = self.bfs_parents(x);
        if !parent.contains_key(&y) {
            return Ok(None);
        }
        let mut vertices = vec![y];
        let mut cur = y;
        while cur != x {
            cur = parent[&cur];
            vertices.push(cur);
        }
        vertices.reverse();
        Ok(Some(Path::in_graph(self, vertices).expect("BFS yields a valid path")))
    }

    /// Shortest-path eccentricities together with their extremes.
    pub fn metrics(&self) -> Result<GraphMetrics> {
        if self.vertices.is_empty() || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut eccentricities = BTreeMap::new();
        for &v in &self.vertices {
            let ecc = self.bfs(v).into_values().max().expect("source is reached");
            eccentricities.insert(v, ecc);
        }
        let radius = *eccentricities.values().min().expect("nonempty");
        let diameter = *eccentricities.values().max().expect("nonempty");
        Ok(GraphMetrics { eccentricities, radius, diameter })
    }

    /// True iff the graph is connected and acyclic.
    #[must_use]
    pub fn is_tree(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        // A connected graph is acyclic exactly when BFS discovers every edge
        // as a tree edge: q = p - 1.
        self.is_connected() && self.edges.len() == self.vertices.len() - 1
    }

    /// Breadth-first spanning tree rooted at the smallest vertex id.
    pub fn spanning_tree(&self) -> Result<Graph> {
        if self.vertices.is_empty() || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let root = *self.vertices.iter().next().expect("nonempty");
        let mut tree = Graph::new();
        for &v in &self.vertices {
            tree.add_vertex(v);
        }
        for (child, parent) in self.bfs_parents(root) {
            tree.add_edge(parent, child).expect("tree edges are fresh");
        }
        Ok(tree)
    }

    /// Number of independent cycles: edges not used by a spanning tree.
    /// Equals `q - p + 1` on connected graphs.
    pub fn cyclomatic_number(&self) -> Result<u64> {
        let tree = self.spanning_tree()?;
        Ok((self.edges.len() - tree.edge_count()) as u64)
    }

    /// Checks `p - 1 <= q <= p (p - 1) / 2` for a connected graph on `p`
    /// vertices with `q` edges.
    pub fn edge_bounds_check(&self) -> Result<bool> {
        if self.vertices.is_empty() || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let p = self.vertices.len() as u128;
        let q = self.edges.len() as u128;
        Ok(p - 1 <= q && q <= p * (p - 1) / 2)
    }

    /// True iff a closed trail uses every edge: the graph is connected, has at
    /// least one edge, and every degree is even.
    pub fn is_eulerian(&self) -> Result<bool> {
        if self.vertices.is_empty() || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(!self.edges.is_empty() && self.adj.values().all(|n| n.len() % 2 == 0))
    }

    /// A closed trail through every edge, built with Hierholzer's splicing
    /// walk. Starts at the smallest vertex and always leaves along the
    /// smallest unused edge, so the circuit is canonical.
    pub fn eulerian_circuit(&self) -> Result<Trail> {
        let eulerian = match self.is_eulerian() {
            Ok(flag) => flag,
            Err(_) => return Err(Error::NotEulerian("graph is not connected".into())),
        };
        if !eulerian {
            let reason = if self.edges.is_empty() {
                "graph has no edges".to_string()
            } else {
                let odd = self
                    .adj
                    .iter()
                    .find(|(_, n)| n.len() % 2 == 1)
                    .map(|(v, _)| *v)
                    .expect("some degree is odd");
                format!("vertex {odd} has odd degree")
            };
            return Err(Error::NotEulerian(reason));
        }

        let mut remaining = self.adj.clone();
        let start = *self
            .adj
            .iter()
            .find(|(_, n)| !n.is_empty())
            .map(|(v, _)| v)
            .expect("graph has edges");
        let mut stack = vec![start];
        let mut walk = Vec::with_capacity(self.edges.len() + 1);
        while let Some(&v) = stack.last() {
            let next = remaining.get(&v).and_then(|n| n.iter().next().copied());
            match next {
                Some(w) => {
                    remaining.get_mut(&v).expect("present").remove(&w);
                    remaining.get_mut(&w).expect("present").remove(&v);
                    stack.push(w);
                }
                None => {
                    walk.push(stack.pop().expect("stack nonempty"));
                }
            }
        }
        walk.reverse();
        debug_assert_eq!(walk.len(), self.edges.len() + 1, "every edge is used once");
        Trail::in_graph(self, walk)
    }

    /// The three classical degree conditions that force a Hamiltonian loop.
    /// All comparisons stay in integers (`2 d >= p` instead of `d >= p / 2`).
    pub fn hamiltonian_criteria(&self) -> Result<HamiltonianCriteria> {
        let p = self.vertices.len();
        if p < 3 {
            return Err(Error::TooSmall { needed: 3, got: p });
        }
        let degree_of: BTreeMap<VertexId, usize> =
            self.adj.iter().map(|(v, n)| (*v, n.len())).collect();

        let dirac = degree_of.values().all(|&d| 2 * d >= p);

        let mut ore = true;
        'pairs: for (i, &x) in self.vertices.iter().enumerate() {
            for &y in self.vertices.iter().skip(i + 1) {
                if !self.contains_edge(x, y) && degree_of[&x] + degree_of[&y] < p {
                    ore = false;
                    break 'pairs;
                }
            }
        }

        // For every j with 1 <= j < p/2, fewer than j vertices may have
        // degree <= j.
        let mut posa = true;
        for j in 1..p {
            if 2 * j >= p {
                break;
            }
            let low = degree_of.values().filter(|&&d| d <= j).count();
            if low >= j {
                posa = false;
                break;
            }
        }

        Ok(HamiltonianCriteria { dirac, ore, posa })
    }

    /// Exhaustive search for a Hamiltonian loop with the default bound of
    /// [`BRUTEFORCE_BOUND`] vertices.
    pub fn hamiltonian_bruteforce(&self) -> Result<Option<Loop>> {
        self.hamiltonian_bruteforce_with_bound(BRUTEFORCE_BOUND)
    }

    /// Exhaustive search for a Hamiltonian loop; the first loop in
    /// lexicographic DFS order from the smallest vertex, or `None`.
    pub fn hamiltonian_bruteforce_with_bound(&self, bound: usize) -> Result<Option<Loop>> {
        let p = self.vertices.len();
        if p > bound {
            return Err(Error::TooLarge { bound, got: p });
        }
        if p < 3 {
            return Ok(None);
        }
        let start = *self.vertices.iter().next().expect("nonempty");
        let mut path = vec![start];
        let mut visited = BTreeSet::from([start]);
        let found = self.extend_hamiltonian(start, &mut path, &mut visited);
        Ok(found.then(|| Loop::in_graph(self, path).expect("search yields a valid loop")))
    }

    fn extend_hamiltonian(
        &self,
        start: VertexId,
        path: &mut Vec<VertexId>,
        visited: &mut BTreeSet<VertexId>,
    ) -> bool {
        let last = *path.last().expect("path nonempty");
        if path.len() == self.vertices.len() {
            return self.contains_edge(last, start);
        }
        for w in self.neighbors(last).collect::<Vec<_>>() {
            if visited.insert(w) {
                path.push(w);
                if self.extend_hamiltonian(start, path, visited) {
                    return true;
                }
                path.pop();
                visited.remove(&w);
            }
        }
        false
    }

    /// Colors vertices in ascending id order with the smallest color not used
    /// by an already-colored neighbor. Uses at most `max_degree + 1` colors.
    #[must_use]
    pub fn greedy_coloring(&self) -> Coloring {
        let mut assignment: BTreeMap<VertexId, u64> = BTreeMap::new();
        for &v in &self.vertices {
            let taken: BTreeSet<u64> =
                self.neighbors(v).filter_map(|w| assignment.get(&w).copied()).collect();
            let color = (1..).find(|c| !taken.contains(c)).expect("some color is free");
            assignment.insert(v, color);
        }
        let colors_used = assignment.values().copied().max().unwrap_or(0);
        Coloring { assignment, colors_used }
    }

    /// Subgraph induced by the vertex set `keep`.
    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Result<Graph> {
        if let Some(&v) = keep.iter().find(|v| !self.vertices.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        let mut sub = Graph::new();
        for &v in keep {
            sub.add_vertex(v);
        }
        for e in &self.edges {
            let (x, y) = e.endpoints();
            if keep.contains(&x) && keep.contains(&y) {
                sub.add_edge(x, y).expect("fresh edge");
            }
        }
        Ok(sub)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    vertices: Vec<u64>,
    edges: Vec<(u64, u64)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = GraphWire {
            vertices: self.vertices.iter().map(|v| v.0).collect(),
            edges: self.edges.iter().map(|e| (e.a.0, e.b.0)).collect(),
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Graph, D::Error> {
        let wire = GraphWire::deserialize(d)?;
        let mut g = Graph::new();
        for v in wire.vertices {
            if !g.vertices.insert(VertexId(v)) {
                return Err(D::Error::custom(format!("duplicate vertex {v}")));
            }
            g.adj.entry(VertexId(v)).or_default();
        }
        for (x, y) in wire.edges {
            g.add_edge(VertexId(x), VertexId(y))
                .map_err(|e| D::Error::custom(format!("edge [{x}, {y}]: {e}")))?;
        }
        Ok(g)
    }
}

/// Eccentricity of every vertex plus the two extremes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub eccentricities: BTreeMap<VertexId, u64>,
    pub radius: u64,
    pub diameter: u64,
}

/// Outcome of the three degree-based Hamiltonicity conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HamiltonianCriteria {
    pub dirac: bool,
    pub ore: bool,
    pub posa: bool,
}

/// A path: pairwise distinct vertices, consecutive ones adjacent. Its length
/// is the number of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl Path {
    /// Validates `vertices` as a path inside `g`.
    pub fn in_graph(g: &Graph, vertices: Vec<VertexId>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("a path visits at least one vertex".into()));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidGraph("path vertices must be pairwise distinct".into()));
        }
        let mut edges = Vec::with_capacity(vertices.len() - 1);
        for pair in vertices.windows(2) {
            if !g.contains_edge(pair[0], pair[1]) {
                return Err(Error::InvalidGraph(format!(
                    "vertices {} and {} are not adjacent",
                    pair[0], pair[1]
                )));
            }
            edges.push(Edge::new(pair[0], pair[1]).expect("validated distinct"));
        }
        for &v in &vertices {
            if !g.contains_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        Ok(Path { vertices, edges })
    }

    #[must_use]
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    #[must_use]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of edges.
    #[must_use]
    pub fn length(&self) -> usize {
        self.edges.len()
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            vertices: &'a [VertexId],
        }
        Wire { vertices: &self.vertices }.serialize(s)
    }
}

/// A trail: a walk whose edges are pairwise distinct; vertices may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trail {
    walk: Vec<VertexId>,
    edges: Vec<Edge>,
    closed: bool,
}

impl Trail {
    /// Validates the vertex walk as a trail inside `g`.
    pub fn in_graph(g: &Graph, walk: Vec<VertexId>) -> Result<Trail> {
        if walk.len() < 2 {
            return Err(Error::InvalidGraph("a trail uses at least one edge".into()));
        }
        let mut edges = Vec::with_capacity(walk.len() - 1);
        let mut used = BTreeSet::new();
        for pair in walk.windows(2) {
            if !g.contains_edge(pair[0], pair[1]) {
                return Err(Error::InvalidGraph(format!(
                    "vertices {} and {} are not adjacent",
                    pair[0], pair[1]
                )));
            }
            let e = Edge::new(pair[0], pair[1]).expect("adjacent implies distinct");
            if !used.insert(e) {
                return Err(Error::InvalidGraph("trail repeats an edge".into()));
            }
            edges.push(e);
        }
        let closed = walk.first() == walk.last();
        Ok(Trail { walk, edges, closed })
    }

    #[must_use]
    pub fn walk(&self) -> &[VertexId] {
        &self.walk
    }

    #[must_use]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[must_use]
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of edges.
    #[must_use]
    pub fn length(&self) -> usize {
        self.edges.len()
    }
}

impl Serialize for Trail {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            vertices: &'a [VertexId],
            closed: bool,
        }
        Wire { vertices: &self.walk, closed: self.closed }.serialize(s)
    }
}

/// A loop: a closed path on at least three pairwise distinct vertices. The
/// stored sequence omits the repeated endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    vertices: Vec<VertexId>,
}

impl Loop {
    /// Validates `vertices` (without the closing repeat) as a loop inside `g`.
    pub fn in_graph(g: &Graph, vertices: Vec<VertexId>) -> Result<Loop> {
        if vertices.len() < 3 {
            return Err(Error::InvalidGraph("a loop visits at least three vertices".into()));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidGraph("loop vertices must be pairwise distinct".into()));
        }
        for i in 0..vertices.len() {
            let x = vertices[i];
            let y = vertices[(i + 1) % vertices.len()];
            if !g.contains_edge(x, y) {
                return Err(Error::InvalidGraph(format!("vertices {x} and {y} are not adjacent")));
            }
        }
        Ok(Loop { vertices })
    }

    #[must_use]
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of edges, which equals the number of vertices.
    #[must_use]
    pub fn length(&self) -> usize {
        self.vertices.len()
    }
}

impl Serialize for Loop {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            vertices: &'a [VertexId],
        }
        Wire { vertices: &self.vertices }.serialize(s)
    }
}

/// A proper vertex coloring with colors `1..=colors_used`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub assignment: BTreeMap<VertexId, u64>,
    pub colors_used: u64,
}

impl Coloring {
    /// True iff adjacent vertices always receive different colors.
    #[must_use]
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|e| {
            let (x, y) = e.endpoints();
            match (self.assignment.get(&x), self.assignment.get(&y)) {
                (Some(cx), Some(cy)) => cx != cy,
                _ => false,
            }
        })
    }
}
