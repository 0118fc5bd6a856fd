//! Seeded random connected graphs for the property suites: spanning-tree
//! based samples plus periodic all-even-degree samples so both branches of
//! the Euler biconditional get exercised.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};

/// Every how-many-th corpus graph is built with all degrees even.
const EULERIAN_STRIDE: usize = 5;

/// A connected graph with a vertex count drawn from `min_vertices ..=
/// max_vertices`: a random tree plus a few random extra edges.
pub fn random_connected_graph(
    rng: &mut ChaCha8Rng,
    min_vertices: u64,
    max_vertices: u64,
) -> Graph {
    assert!(1 <= min_vertices && min_vertices <= max_vertices);
    let v = rng.random_range(min_vertices..=max_vertices);
    let mut g = Graph::new();
    for i in 0..v {
        g.add_vertex(VertexId(i));
    }
    // Random recursive tree: each vertex attaches to an earlier one.
    for i in 1..v {
        let parent = rng.random_range(0..i);
        g.add_edge(VertexId(parent), VertexId(i)).expect("fresh tree edge");
    }
    if v >= 2 {
        for _ in 0..rng.random_range(0..=v) {
            let a = rng.random_range(0..v);
            let b = rng.random_range(0..v);
            if a != b && !g.contains_edge(VertexId(a), VertexId(b)) {
                g.add_edge(VertexId(a), VertexId(b)).expect("checked absent");
            }
        }
    }
    g
}

/// A connected graph with every degree even: a closed walk through a random
/// vertex permutation, thickened by a few edge-disjoint triangles.
pub fn random_even_degree_graph(
    rng: &mut ChaCha8Rng,
    min_vertices: u64,
    max_vertices: u64,
) -> Graph {
    let v = rng.random_range(min_vertices.max(3)..=max_vertices.max(3));
    let mut ids: Vec<u64> = (0..v).collect();
    ids.shuffle(rng);
    let mut g = Graph::new();
    for &i in &ids {
        g.add_vertex(VertexId(i));
    }
    for w in 0..v as usize {
        let (a, b) = (ids[w], ids[(w + 1) % v as usize]);
        g.add_edge(VertexId(a), VertexId(b)).expect("cycle edges are fresh");
    }
    // Adding a triangle of absent edges raises three degrees by 2 each.
    if v >= 5 {
        for _ in 0..4 {
            let a = rng.random_range(0..v);
            let b = rng.random_range(0..v);
            let c = rng.random_range(0..v);
            let fresh = a != b
                && b != c
                && a != c
                && !g.contains_edge(VertexId(a), VertexId(b))
                && !g.contains_edge(VertexId(b), VertexId(c))
                && !g.contains_edge(VertexId(a), VertexId(c));
            if fresh {
                g.add_edge(VertexId(a), VertexId(b)).expect("checked absent");
                g.add_edge(VertexId(b), VertexId(c)).expect("checked absent");
                g.add_edge(VertexId(a), VertexId(c)).expect("checked absent");
            }
        }
    }
    g
}

/// A deterministic corpus of `count` connected graphs, with every
/// [`EULERIAN_STRIDE`]-th one all-even-degree.
pub fn corpus(seed: u64, count: usize, min_vertices: u64, max_vertices: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            if i % EULERIAN_STRIDE == EULERIAN_STRIDE - 1 {
                random_even_degree_graph(&mut rng, min_vertices, max_vertices)
            } else {
                random_connected_graph(&mut rng, min_vertices, max_vertices)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_are_connected_sized_and_deterministic() {
        let graphs = corpus(7, 60, 4, 12);
        assert_eq!(graphs.len(), 60);
        for g in &graphs {
            assert!(g.is_connected());
            assert!((4..=12).contains(&(g.vertex_count() as u64)));
        }
        assert_eq!(graphs, corpus(7, 60, 4, 12));
        assert_ne!(graphs, corpus(8, 60, 4, 12));
    }

    #[test]
    fn every_fifth_graph_has_even_degrees() {
        let graphs = corpus(3, 40, 5, 10);
        for (i, g) in graphs.iter().enumerate() {
            if i % EULERIAN_STRIDE == EULERIAN_STRIDE - 1 {
                let all_even =
                    g.vertices().all(|v| g.degree(v).expect("own vertex") % 2 == 0);
                assert!(all_even, "graph {i} has an odd degree");
                assert!(g.is_eulerian().unwrap());
            }
        }
    }
}
