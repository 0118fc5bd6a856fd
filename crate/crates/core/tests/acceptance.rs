//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line with its wall-clock time and asserting a runtime budget.
//!
//! The criteria cover the circuit-rank identity, the edge-count bounds, the
//! radius/diameter bound, the Euler biconditional, soundness of the
//! Hamiltonicity criteria, the greedy coloring bound, the ultrafilter laws
//! on the eventually periodic algebra, the infinite-path construction, the
//! independence of nonstandard objects from their representatives, and the
//! collapse of the enlargement of a fixed finite graph.

use std::time::{Duration, Instant};

use ultragraph_core::random::corpus;
use ultragraph_core::transfer::{check_transfer, Decision, TheoremId};
use ultragraph_core::{
    Graph, GraphFamily, HyperNat, IndexSet, SeqNat, SetClass, Trail, TruthSet, UltraGraph,
    Ultrafilter, VertexId,
};

fn finish(number: u32, label: &str, budget_ms: u64, started: Instant) {
    let elapsed = started.elapsed();
    println!("criterion {number} ({label}): PASS in {} ms", elapsed.as_millis());
    assert!(
        elapsed < Duration::from_millis(budget_ms),
        "criterion {number} ({label}) exceeded its {budget_ms} ms budget: {elapsed:?}"
    );
}

fn growing_families() -> Vec<GraphFamily> {
    vec![
        GraphFamily::growing_complete(SeqNat::affine(1, 3)).unwrap(),
        GraphFamily::growing_cycle(SeqNat::affine(1, 3)).unwrap(),
        GraphFamily::growing_path(SeqNat::affine(1, 3)).unwrap(),
    ]
}

fn zero() -> Ultrafilter {
    Ultrafilter::zero_point()
}

#[test]
fn criterion_01_cyclomatic_identity() {
    let started = Instant::now();
    for fam in growing_families() {
        for n in 0..64 {
            let g = fam.graph_at(n).unwrap();
            let p = g.vertex_count() as u64;
            let q = g.edge_count() as u64;
            let r = g.cyclomatic_number().unwrap();
            assert_eq!(r + p, q + 1, "index {n} of {:?}", fam.kind());
        }
        let counts = UltraGraph::new(fam, zero()).counts().unwrap();
        assert!(counts.identity_holds, "hypernatural identity");
    }
    for (i, g) in corpus(11, 200, 4, 12).iter().enumerate() {
        let p = g.vertex_count() as u64;
        let q = g.edge_count() as u64;
        let r = g.cyclomatic_number().unwrap();
        assert_eq!(r + p, q + 1, "random graph {i}");
    }
    finish(1, "cyclomatic identity", 5000, started);
}

#[test]
fn criterion_02_edge_bounds() {
    let started = Instant::now();
    for fam in growing_families() {
        for n in 0..64 {
            let g = fam.graph_at(n).unwrap();
            let p = g.vertex_count() as u64;
            let q = g.edge_count() as u64;
            assert!(p - 1 <= q && 2 * q <= p * (p - 1), "index {n}");
            assert!(g.edge_bounds_check().unwrap());
        }
        let report = check_transfer(TheoremId::EdgeBounds, &UltraGraph::new(fam, zero())).unwrap();
        assert_eq!(report.decision, Decision::In);
    }
    for (i, g) in corpus(11, 200, 4, 12).iter().enumerate() {
        let p = g.vertex_count() as u64;
        let q = g.edge_count() as u64;
        assert!(p - 1 <= q && 2 * q <= p * (p - 1), "random graph {i}");
    }
    finish(2, "edge bounds", 2000, started);
}

#[test]
fn criterion_03_radius_diameter() {
    let started = Instant::now();
    let check = |g: &Graph, what: &str| {
        let m = g.metrics().unwrap();
        assert!(m.radius <= m.diameter && m.diameter <= 2 * m.radius, "{what}");
    };
    for fam in growing_families() {
        for n in 0..64 {
            check(&fam.graph_at(n).unwrap(), &format!("index {n}"));
        }
    }
    for (i, g) in corpus(11, 200, 4, 12).iter().enumerate() {
        check(g, &format!("random graph {i}"));
    }
    for m in 3..=64 {
        check(&Graph::cycle_graph(m).unwrap(), &format!("cycle on {m}"));
        check(&Graph::path_graph(m), &format!("path on {m}"));
    }
    // Hypernatural comparisons on families whose metrics stay symbolic.
    for fam in [
        GraphFamily::growing_path(SeqNat::affine(2, 5)).unwrap(),
        GraphFamily::growing_cycle(SeqNat::affine(2, 4)).unwrap(),
        GraphFamily::growing_complete(SeqNat::affine(1, 3)).unwrap(),
    ] {
        let metrics = UltraGraph::new(fam, zero()).metrics().unwrap();
        assert!(metrics.bound_ok);
        let two = HyperNat::standard(2, zero());
        assert!(metrics.radius.le_ae(&metrics.diameter).unwrap());
        assert!(metrics.diameter.le_ae(&metrics.radius.mul(&two).unwrap()).unwrap());
    }
    finish(3, "radius and diameter", 5000, started);
}

#[test]
fn criterion_04_euler_biconditional() {
    let started = Instant::now();
    let mut eulerian_seen = 0;
    for (i, g) in corpus(23, 500, 2, 12).iter().enumerate() {
        let parity = g
            .vertices()
            .all(|v| g.degree(v).unwrap() % 2 == 0);
        let is_eulerian = g.is_eulerian().unwrap();
        assert_eq!(is_eulerian, parity, "parity characterization, graph {i}");
        match g.eulerian_circuit() {
            Ok(trail) => {
                assert!(is_eulerian, "circuit built on a non-Eulerian graph {i}");
                assert!(trail.is_closed());
                assert_eq!(trail.length(), g.edge_count(), "graph {i} circuit edge count");
                // Revalidating the walk checks adjacency and edge-uniqueness.
                Trail::in_graph(g, trail.walk().to_vec()).unwrap();
                eulerian_seen += 1;
            }
            Err(_) => assert!(!is_eulerian, "no circuit on an Eulerian graph {i}"),
        }
    }
    assert!(eulerian_seen >= 90, "only {eulerian_seen} Eulerian samples");

    let fam = GraphFamily::growing_complete(SeqNat::affine(1, 3)).unwrap();
    let report =
        check_transfer(TheoremId::EulerEvenDegree, &UltraGraph::new(fam.clone(), zero())).unwrap();
    let evens = IndexSet::periodic(2, [0]).unwrap();
    assert!(matches!(&report.truth_set, TruthSet::Exact(s) if *s == evens));
    assert_eq!(report.decision, Decision::In);
    assert!(matches!(report.biconditional_set, Some(TruthSet::Exact(ref s)) if s.is_full()));

    let at_odds = UltraGraph::new(fam, Ultrafilter::from_limit(1));
    assert_eq!(check_transfer(TheoremId::EulerEvenDegree, &at_odds).unwrap().decision, Decision::Out);
    finish(4, "Euler biconditional", 10_000, started);
}

#[test]
fn criterion_05_hamiltonian_criteria_soundness() {
    let started = Instant::now();
    let mut positives = 0;
    for (i, g) in corpus(31, 1000, 3, 8).iter().enumerate() {
        let c = g.hamiltonian_criteria().unwrap();
        if c.dirac || c.ore || c.posa {
            positives += 1;
            assert!(
                g.hamiltonian_bruteforce().unwrap().is_some(),
                "graph {i} passes a criterion but has no loop"
            );
        }
    }
    assert!(positives >= 50, "only {positives} criterion-positive samples");
    finish(5, "Hamiltonian criteria soundness", 30_000, started);
}

#[test]
fn criterion_06_coloring_bound() {
    let started = Instant::now();
    for (i, g) in corpus(11, 200, 4, 12).iter().enumerate() {
        let coloring = g.greedy_coloring();
        assert!(coloring.is_proper(g), "random graph {i}");
        assert!(coloring.colors_used <= g.max_degree() + 1, "random graph {i}");
    }
    finish(6, "coloring bound", 2000, started);
}

/// The decision of an eventually periodic set depends only on its eventual
/// class (exceptions pass through canonicalization and, at most, tip a set
/// into the finite or cofinite class), so the pairwise closure laws reduce
/// to the exception-free periodic cores. The sweep below is exhaustive over
/// the cores for the pairwise laws and exhaustive over all exception masks
/// in [0, 12) for the per-set laws.
#[test]
fn criterion_07_ultrafilter_laws() {
    let started = Instant::now();
    let mut cores = Vec::new();
    for modulus in 1..=6u64 {
        for mask in 0..(1u64 << modulus) {
            let residues = (0..modulus).filter(|r| mask >> r & 1 == 1);
            cores.push(IndexSet::periodic(modulus, residues).unwrap());
        }
    }
    let minus_one = Ultrafilter::from_residues(
        (1..=12u64).map(|k| (1..=k).product::<u64>() - 1).collect(),
    )
    .unwrap();
    let points =
        [zero(), minus_one, Ultrafilter::from_limit(1), Ultrafilter::from_limit(5)];
    for (which, point) in points.iter().enumerate() {
        // Per-set laws, exhaustive over every exception mask. The sweep is
        // point-independent by the invariance it verifies, so two points
        // (one constant chain, one not) carry it while all four get the
        // core and closure laws.
        let masks = if which < 2 { 1u32 << 12 } else { 1 };
        for core in &cores {
            let core_holds = point.holds(core).unwrap();
            assert_ne!(core_holds, point.holds(&core.complement()).unwrap());
            let pattern: Vec<bool> = (0..12).map(|e| core.contains(e)).collect();
            for mask in 0u32..masks {
                let added = (0..12u64).filter(|&e| mask >> e & 1 == 1 && !pattern[e as usize]);
                let removed = (0..12u64).filter(|&e| mask >> e & 1 == 1 && pattern[e as usize]);
                let s = IndexSet::from_parts(
                    core.modulus(),
                    core.residues().iter().copied(),
                    added,
                    removed,
                )
                .unwrap();
                let holds = point.holds(&s).unwrap();
                match s.classify() {
                    SetClass::Finite => assert!(!holds, "a finite set was accepted"),
                    SetClass::Cofinite => assert!(holds, "a cofinite set was rejected"),
                    SetClass::ProperPeriodic => {
                        assert_eq!(holds, core_holds, "an exception changed a decision")
                    }
                }
                assert_ne!(holds, point.holds(&s.complement()).unwrap());
            }
        }
        // Pairwise closure laws over the periodic cores.
        for s in &cores {
            let s_holds = point.holds(s).unwrap();
            for t in &cores {
                let t_holds = point.holds(t).unwrap();
                if s_holds && t_holds {
                    assert!(point.holds(&s.intersection(t).unwrap()).unwrap());
                }
                if s_holds && s.is_subset_of(t).unwrap() {
                    assert!(t_holds, "upward closure failed");
                }
            }
        }
    }
    finish(7, "ultrafilter laws", 5000, started);
}

#[test]
fn criterion_08_infinite_path_construction() {
    let started = Instant::now();
    let report = ultragraph_core::infinite_path_walkthrough(&zero()).unwrap();
    assert!(report.all_as_expected);

    let ug = UltraGraph::new(GraphFamily::infinite_path(), zero());
    for stride in [1u64, 2] {
        let base = SeqNat::affine(stride, 0);
        let x = ug.vertex(base.clone()).unwrap();
        let y = ug.vertex(base.add(&SeqNat::constant(1)).unwrap()).unwrap();
        let z = ug.vertex(base.add(&SeqNat::constant(2)).unwrap()).unwrap();
        let w = ug.vertex(base.add(&SeqNat::affine(1, 2)).unwrap()).unwrap();
        assert!(ug.edge(&x, &y).unwrap().is_some(), "stride {stride}");
        assert!(ug.edge(&x, &z).unwrap().is_none(), "stride {stride}, offset 2");
        assert!(ug.edge(&x, &w).unwrap().is_none(), "stride {stride}, offset n + 2");
        assert!(!ug.vertex_eq(&x, &y).unwrap());
        assert!(!ug.vertex_eq(&y, &z).unwrap());
        assert!(!ug.vertex_eq(&x, &z).unwrap());
    }
    let o = ug.vertex(SeqNat::constant(0)).unwrap();
    assert!(ug.vertex_eq(&o, &o).unwrap());
    assert!(ug.edge(&o, &o).is_err(), "no edge attempt on one class");
    finish(8, "infinite path construction", 1000, started);
}

#[test]
fn criterion_09_representative_independence() {
    use rand::Rng;
    use rand::SeedableRng;
    let started = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);

    let families = [GraphFamily::growing_cycle(SeqNat::affine(1, 3)).unwrap(),
        GraphFamily::growing_complete(SeqNat::affine(1, 4)).unwrap(),
        GraphFamily::growing_path(SeqNat::affine(1, 5)).unwrap(),
        GraphFamily::constant(Graph::cycle_graph(6).unwrap()),
        GraphFamily::periodic_graphs(vec![Graph::complete_graph(4), Graph::cycle_graph(5).unwrap()])
            .unwrap()];
    // Values below 3 are valid at every index of every family above.
    let maps = |rng: &mut rand_chacha::ChaCha8Rng| -> SeqNat {
        match rng.random_range(0..3) {
            0 => SeqNat::constant(rng.random_range(0..3)),
            1 => SeqNat::periodic(vec![rng.random_range(0..3), rng.random_range(0..3)]).unwrap(),
            _ => SeqNat::periodic(vec![
                rng.random_range(0..3),
                rng.random_range(0..3),
                rng.random_range(0..3),
            ])
            .unwrap(),
        }
    };

    for i in 0..100 {
        let ug = UltraGraph::new(families[i % families.len()].clone(), zero());
        let u = maps(&mut rng);
        let v = maps(&mut rng);
        // A perturbation on a finite prefix is invisible almost everywhere,
        // even when the overriding values are garbage.
        let perturb = |rng: &mut rand_chacha::ChaCha8Rng, s: &SeqNat| -> SeqNat {
            let len = rng.random_range(1..=6);
            let values: Vec<u64> = (0..len)
                .map(|_| if rng.random_bool(0.5) { rng.random_range(0..3) } else { rng.random_range(1000..2000) })
                .collect();
            s.with_prefix_overrides(&values).unwrap()
        };
        let u2 = perturb(&mut rng, &u);
        let v2 = perturb(&mut rng, &v);

        let x = ug.vertex(u.clone()).unwrap();
        let y = ug.vertex(v.clone()).unwrap();
        let x2 = ug.vertex(u2).unwrap();
        let y2 = ug.vertex(v2).unwrap();
        assert!(ug.vertex_eq(&x, &x2).unwrap(), "pair {i}: perturbed map left its class");
        assert!(ug.vertex_eq(&y, &y2).unwrap(), "pair {i}: perturbed map left its class");
        assert_eq!(ug.vertex_eq(&x, &y).unwrap(), ug.vertex_eq(&x2, &y2).unwrap(), "pair {i}");

        let outcome = |r: ultragraph_core::error::Result<Option<ultragraph_core::NsEdge>>| match r {
            Ok(Some(_)) => "edge",
            Ok(None) => "no edge",
            Err(_) => "identical endpoints",
        };
        assert_eq!(
            outcome(ug.edge(&x, &y)),
            outcome(ug.edge(&x2, &y2)),
            "pair {i}: representatives changed the edge outcome"
        );
    }
    finish(9, "representative independence", 2000, started);
}

#[test]
fn criterion_10_enlargement_collapse() {
    let started = Instant::now();
    for graph in [Graph::complete_graph(4), Graph::cycle_graph(5).unwrap()] {
        let m = graph.vertex_count() as u64;
        let ug = UltraGraph::new(GraphFamily::constant(graph.clone()), zero());

        // Every vertex from a periodic index map collapses to exactly one
        // constant-map vertex: the value on the point's residue class.
        let mut tables = vec![];
        for a in 0..m {
            tables.push(vec![a]);
            for b in 0..m {
                tables.push(vec![a, b]);
                for c in 0..m {
                    tables.push(vec![a, b, c]);
                }
            }
        }
        for table in tables {
            let expected = table[0]; // the zero point sits in residue class 0
            let x = ug.vertex(SeqNat::periodic(table.clone()).unwrap()).unwrap();
            let matches: Vec<u64> = (0..m)
                .filter(|&c| {
                    let konst = ug.vertex(SeqNat::constant(c)).unwrap();
                    ug.vertex_eq(&x, &konst).unwrap()
                })
                .collect();
            assert_eq!(matches, vec![expected], "table {table:?}");
        }

        // Nonstandard edges between constant classes are exactly the edges.
        let mut found = 0;
        for c in 0..m {
            for d in c + 1..m {
                let x = ug.vertex(SeqNat::constant(c)).unwrap();
                let y = ug.vertex(SeqNat::constant(d)).unwrap();
                let edge = ug.edge(&x, &y).unwrap();
                assert_eq!(edge.is_some(), graph.contains_edge(VertexId(c), VertexId(d)));
                found += edge.is_some() as usize;
            }
        }
        assert_eq!(found, graph.edge_count());
    }
    finish(10, "enlargement collapse", 1000, started);
}
