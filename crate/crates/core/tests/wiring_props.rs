mod common;

use std::collections::BTreeSet;

use symgen_core::automorphism::orbits;
use symgen_core::graph::{canonical, Provenance};
use symgen_core::quotient::{coarsest_equitable, extract_quotient};
use symgen_core::solver::solve_quotient;
use symgen_core::wiring::{generate, wire_intra, CompositionChoice};

#[test]
fn inter_wiring_equals_its_dual() {
    let checked = common::wiring_equality(24).unwrap();
    assert!(checked > 10_000, "only {checked} plans");
}

#[test]
fn intra_offsets_are_symmetric() {
    for n in 1..=20usize {
        for q in 0..n {
            if q % 2 == 1 && n % 2 == 1 {
                assert!(wire_intra(n, q).is_err());
                continue;
            }
            let forward: BTreeSet<(usize, usize)> = (0..n)
                .flat_map(|i| (1..=q / 2).map(move |j| (i, (i + j) % n)))
                .collect();
            let backward: BTreeSet<(usize, usize)> = (0..n)
                .flat_map(|i| (1..=q / 2).map(move |j| (i, (i + n - j) % n)))
                .collect();
            let reversed: BTreeSet<(usize, usize)> = forward.iter().map(|&(a, b)| (b, a)).collect();
            assert_eq!(reversed, backward, "n={n} q={q}");

            let mut expected: BTreeSet<(usize, usize)> =
                forward.iter().map(|&(a, b)| canonical(a, b)).collect();
            if q % 2 == 1 {
                expected.extend((0..n / 2).map(|i| (i, i + n / 2)));
            }
            let got: BTreeSet<(usize, usize)> = wire_intra(n, q).unwrap().into_iter().collect();
            assert_eq!(got, expected, "n={n} q={q}");
            assert_eq!(got.len(), n * q / 2);
        }
    }
}

#[test]
fn block_rotation_is_an_automorphism() {
    for (_, q, s) in common::chain_instances(150) {
        let sol = solve_quotient(&q, s).unwrap();
        let (g, part) = generate(&q, &sol, CompositionChoice::Balanced).unwrap();
        assert!(g.is_automorphism(&common::block_rotation(&part)).unwrap());
    }
}

#[test]
fn refinement_chain_holds() {
    let report = common::refinement_chain(150).unwrap();
    assert_eq!(report.deterministic, report.randomized);
    // The rigid pair quotient loses its symmetry under randomization.
    assert!(report.construction_not_in_orbits > 0);
}

#[test]
fn three_cluster_pipeline() {
    let q = common::quotient("three_cluster.qg");
    let sol = solve_quotient(&q, 2).unwrap();
    assert_eq!(sol.n, vec![4, 8, 2]);
    let (g, part) = generate(&q, &sol, CompositionChoice::Balanced).unwrap();
    assert_eq!((g.n(), g.edge_count()), (14, 22));
    let mut counts = [0usize; 4];
    for (_, tag) in g.tagged_edges() {
        let slot = match tag.unwrap() {
            Provenance::SelfLoop(0) => 0,
            Provenance::SelfLoop(1) => 1,
            Provenance::Pair(0, 1) => 2,
            Provenance::Pair(0, 2) => 3,
            other => panic!("unexpected tag {other:?}"),
        };
        counts[slot] += 1;
    }
    assert_eq!(counts, [2, 8, 8, 4]);
    assert_eq!(extract_quotient(&g, &part).unwrap(), q);
    assert_eq!(coarsest_equitable(&g).p(), 3);
    assert_eq!(orbits(&g).unwrap().len(), 3);
}

#[test]
fn bipartite_pair_at_scale_one_is_forced() {
    let q = common::quotient("bipartite_pair.qg");
    let sol = solve_quotient(&q, 1).unwrap();
    let (g, _) = generate(&q, &sol, CompositionChoice::Balanced).unwrap();
    let mut expected: Vec<(usize, usize)> = (0..3).flat_map(|u| (3..5).map(move |v| (u, v))).collect();
    expected.push((3, 4));
    expected.sort_unstable();
    assert_eq!(g.edges(), expected.as_slice());
    assert_eq!(symgen_core::automorphism::orbits_bruteforce(&g).unwrap().len(), 2);
    assert_eq!(coarsest_equitable(&g).p(), 2);
}

#[test]
fn random_compositions_still_realize_the_quotient() {
    let q = common::quotient("three_cluster.qg");
    for seed in 0..50 {
        let sol = solve_quotient(&q, 6).unwrap();
        let (g, part) = generate(&q, &sol, CompositionChoice::Random { seed }).unwrap();
        common::check_realization(&q, &g, &part).unwrap();
    }
}
