mod common;

use rand::Rng;
use symgen_core::automorphism::{closure_of, orbit_partition_is_equitable, orbits, orbits_with_budget};
use symgen_core::quotient::coarsest_equitable;
use symgen_core::{Error, Graph, Permutation};

#[test]
fn search_matches_brute_force() {
    assert_eq!(common::orbit_oracle(2000), Ok(2000));
}

#[test]
fn generators_orbits_and_refinement() {
    let mut r = common::rng("generators");
    for _ in 0..300 {
        let n = r.random_range(0..=24);
        let density = [0.1, 0.3, 0.5][r.random_range(0..3)];
        let g = common::random_graph(&mut r, n, density);
        let o = orbits(&g).unwrap();
        for p in &o.generators {
            assert!(g.is_automorphism(p).unwrap());
            assert!(!p.is_identity());
        }
        assert_eq!(closure_of(g.n(), &o.generators), o.partition);
        assert_eq!(o.partition, o.partition.normalized());
        assert!(orbit_partition_is_equitable(&g, &o).unwrap());
        assert!(o.partition.refines(&coarsest_equitable(&g)));
        assert_eq!(orbits(&g).unwrap(), o);
    }
}

#[test]
fn orbit_sizes_survive_relabeling() {
    let mut r = common::rng("orbit-relabel");
    for _ in 0..200 {
        let n = r.random_range(1..=16);
        let g = common::random_graph(&mut r, n, 0.4);
        let mut image: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            image.swap(i, r.random_range(0..=i));
        }
        let perm = Permutation::new(image).unwrap();
        let a = orbits(&g).unwrap().partition;
        let b = orbits(&g.relabel(&perm).unwrap()).unwrap().partition;
        for u in 0..n {
            for v in 0..n {
                assert_eq!(
                    a.cluster_of(u) == a.cluster_of(v),
                    b.cluster_of(perm.apply(u)) == b.cluster_of(perm.apply(v))
                );
            }
        }
    }
}

#[test]
fn symmetric_families() {
    // Petersen graph: vertex-transitive, 10 vertices, 3-regular.
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let petersen = Graph::new(10, outer.chain(spokes).chain(inner)).unwrap();
    assert_eq!(orbits(&petersen).unwrap().len(), 1);

    // Hypercube Q5.
    let cube = Graph::new(
        32,
        (0..32usize).flat_map(|v| (0..5).map(move |b| (v, v ^ (1 << b)))).filter(|&(u, v)| u < v),
    )
    .unwrap();
    assert_eq!(orbits(&cube).unwrap().len(), 1);

    // Two disjoint triangles plus a path: orbits {triangles}, {path ends}, {path middle}.
    let g = Graph::new(9, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7), (7, 8)]).unwrap();
    assert_eq!(orbits(&g).unwrap().partition.cells(), vec![vec![0, 1, 2, 3, 4, 5], vec![6, 8], vec![7]]);
}

#[test]
fn rigid_pair_fixture_is_rigid() {
    let el = symgen_core::io::parse_edge_list(&common::data("rigid_pair.el")).unwrap();
    assert_eq!(common::count_automorphisms(&el.graph), 1);
    assert_eq!(orbits(&el.graph).unwrap().len(), 10);
}

#[test]
fn tiny_budget_is_a_hard_error() {
    let cube = Graph::new(
        16,
        (0..16usize).flat_map(|v| (0..4).map(move |b| (v, v ^ (1 << b)))).filter(|&(u, v)| u < v),
    )
    .unwrap();
    assert_eq!(orbits_with_budget(&cube, 10), Err(Error::BudgetExceeded(10)));
}
