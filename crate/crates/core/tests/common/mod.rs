#![allow(dead_code)]

use std::path::PathBuf;

use num_integer::Integer;
use rand::Rng;
use symgen_core::automorphism::{orbits, orbits_bruteforce};
use symgen_core::feasibility::{
    biregular_realizable, check_erdos_gallai, check_gale_ryser, regular_realizable,
};
use symgen_core::quotient::{coarsest_equitable, extract_quotient};
use symgen_core::rewire::randomize;
use symgen_core::rng::{stream, StreamRng};
use symgen_core::solver::{check_sizes, solve_quotient};
use symgen_core::wiring::{
    balanced_composition, generate, make_plan, random_composition, wire_inter, wire_inter_dual,
    CompositionChoice, InterClusterPlan,
};
use symgen_core::{Graph, Partition, Permutation, QuotientGraph};

pub fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn quotient(name: &str) -> QuotientGraph {
    QuotientGraph::parse(&data(name)).unwrap()
}

pub fn rng(label: &str) -> StreamRng {
    stream(20240601, label, &[])
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Graph on `n ≤ 8` vertices with density drawn from a spread of values.
pub fn mixed_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let n = rng.random_range(0..=max_n);
    let density = [0.1, 0.25, 0.5, 0.75, 0.9][rng.random_range(0..5)];
    random_graph(rng, n, density)
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &a| m | 1 << a))
        .collect()
}

fn equitable_labels(adj: &[u32], labels: &[usize], p: usize) -> bool {
    let mut masks = vec![0u32; p];
    for (v, &c) in labels.iter().enumerate() {
        masks[c] |= 1 << v;
    }
    let mut rep: Vec<Option<usize>> = vec![None; p];
    for (v, &c) in labels.iter().enumerate() {
        match rep[c] {
            None => rep[c] = Some(v),
            Some(r) => {
                if masks
                    .iter()
                    .any(|&m| (adj[v] & m).count_ones() != (adj[r] & m).count_ones())
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Every equitable partition of `g` (n ≤ 12), by enumerating restricted
/// growth strings.
pub fn all_equitable_partitions(g: &Graph) -> Vec<Partition> {
    let n = g.n();
    assert!(n <= 12);
    let adj = adjacency_masks(g);
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut labels = vec![0usize; n];
    fn rec(i: usize, p: usize, labels: &mut Vec<usize>, adj: &[u32], out: &mut Vec<Partition>) {
        if i == labels.len() {
            if equitable_labels(adj, labels, p) {
                out.push(Partition::from_labels(labels.clone()).unwrap());
            }
            return;
        }
        for c in 0..=p {
            labels[i] = c;
            rec(i + 1, p.max(c + 1), labels, adj, out);
        }
    }
    labels[0] = 0;
    rec(1, 1, &mut labels, &adj, &mut out);
    out
}

/// Number of automorphisms by plain backtracking (no refinement).
pub fn count_automorphisms(g: &Graph) -> u64 {
    let n = g.n();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(g: &Graph, v: usize, image: &mut [usize], used: &mut [bool]) -> u64 {
        if v == g.n() {
            return 1;
        }
        let mut total = 0;
        for w in 0..g.n() {
            if used[w] || g.degree(w) != g.degree(v) {
                continue;
            }
            let consistent = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], w));
            if consistent {
                image[v] = w;
                used[w] = true;
                total += rec(g, v + 1, image, used);
                used[w] = false;
            }
        }
        total
    }
    rec(g, 0, &mut image, &mut used)
}

/// Feasible quotient with `p ≤ max_p` clusters and entries `≤ max_entry`,
/// built around a hidden positive size vector so every pair ratio agrees.
pub fn random_feasible_quotient<R: Rng>(rng: &mut R, max_p: usize, max_entry: u64) -> QuotientGraph {
    let p = rng.random_range(1..=max_p);
    let v: Vec<u64> = (0..p).map(|_| rng.random_range(1..=4)).collect();
    let self_loops: Vec<u64> = (0..p).map(|_| rng.random_range(0..=max_entry)).collect();
    let mut pairs = Vec::new();
    for j in 0..p {
        for k in j + 1..p {
            if !rng.random_bool(0.6) {
                continue;
            }
            let g = v[j].gcd(&v[k]);
            let (low, high) = (v[k] / g, v[j] / g);
            let t_max = max_entry / low.max(high);
            if t_max == 0 {
                continue;
            }
            let t = rng.random_range(1..=t_max);
            pairs.push(((j, k), (t * low, t * high)));
        }
    }
    QuotientGraph::new(
        self_loops,
        pairs
            .into_iter()
            .map(|(jk, (l, h))| (jk, symgen_core::quotient::PairWeights { low: l, high: h })),
    )
    .unwrap()
}

/// All degree, parity and size constraints on a realization of `q`.
pub fn check_realization(q: &QuotientGraph, g: &Graph, part: &Partition) -> Result<(), String> {
    let sizes: Vec<u64> = part.sizes().iter().map(|&s| s as u64).collect();
    check_sizes(q, &sizes).map_err(|e| e.to_string())?;
    for v in 0..g.n() {
        let c = part.cluster_of(v);
        for k in 0..q.p() {
            let d = g.degree_to_cluster(v, part, k).unwrap() as u64;
            if d != q.q(c, k) {
                return Err(format!("vertex {v} has {d} neighbors in cluster {k}, expected {}", q.q(c, k)));
            }
        }
    }
    let back = extract_quotient(g, part).map_err(|e| e.to_string())?;
    if &back != q {
        return Err("extracted quotient differs".into());
    }
    Ok(())
}

/// Number of instances checked by the degree/parity suite.
pub fn degree_parity_suite(count: usize) -> Result<usize, String> {
    let mut r = rng("degree-parity");
    for i in 0..count {
        let q = random_feasible_quotient(&mut r, 5, 4);
        let s = r.random_range(1..=3);
        let sol = solve_quotient(&q, s).map_err(|e| format!("instance {i}: {e}"))?;
        let choice = if r.random_bool(0.5) {
            CompositionChoice::Balanced
        } else {
            CompositionChoice::Random { seed: i as u64 }
        };
        let (g, part) = generate(&q, &sol, choice).map_err(|e| format!("instance {i}: {e}"))?;
        check_realization(&q, &g, &part).map_err(|e| format!("instance {i}: {e}"))?;
        let h = randomize(&g, &part, i as u64, 2.0).map_err(|e| format!("instance {i}: {e}"))?;
        check_realization(&q, &h, &part).map_err(|e| format!("instance {i} randomized: {e}"))?;
    }
    Ok(count)
}

fn compositions(h: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 1 {
        return vec![vec![h]];
    }
    let mut out = Vec::new();
    for first in 1..=h - (m - 1) {
        for mut rest in compositions(h - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Checks `wire_inter == wire_inter_dual` for every valid plan with sizes up
/// to `max`; every composition when `h ≤ 10`, balanced plus random ones
/// otherwise. Returns the number of plans checked.
pub fn wiring_equality(max: usize) -> Result<usize, String> {
    let mut r = rng("wiring-equality");
    let mut checked = 0;
    for n_k in 1..=max {
        for n_l in 1..=max {
            let h = n_k.gcd(&n_l);
            let (d_k, d_l) = (n_k / h, n_l / h);
            for m in 1..=h {
                let (q_kl, q_lk) = (d_l * m, d_k * m);
                let base = make_plan(n_k, n_l, q_kl, q_lk).map_err(|e| e.to_string())?;
                let mut bs = if h <= 10 {
                    compositions(h, m)
                } else {
                    let mut v = vec![balanced_composition(h, m)];
                    v.extend((0..32).map(|_| random_composition(h, m, &mut r)));
                    v
                };
                bs.push(base.b.clone());
                for b in bs {
                    let plan = InterClusterPlan::with_composition(n_k, n_l, q_kl, q_lk, b)
                        .map_err(|e| e.to_string())?;
                    let (a, d) = (wire_inter(&plan), wire_inter_dual(&plan));
                    if a != d {
                        return Err(format!("plan {plan:?}: edge sets differ"));
                    }
                    if a.len() != n_k * q_kl {
                        return Err(format!("plan {plan:?}: {} edges", a.len()));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

/// Compares closed-form regular and biregular conditions with the full
/// degree-sequence checks for every parameter up to `max`.
pub fn closed_form_agreement(max: u64) -> Result<usize, String> {
    let mut checked = 0;
    for r in 0..=max {
        for n in 1..=max {
            let seq = vec![r; n as usize];
            if check_erdos_gallai(&seq).unwrap() != regular_realizable(r, n) {
                return Err(format!("regular r={r} n={n}"));
            }
            checked += 1;
        }
    }
    for r1 in 0..=max {
        for n1 in 1..=max {
            let a = vec![r1; n1 as usize];
            for r2 in 0..=max {
                for n2 in 1..=max {
                    let b = vec![r2; n2 as usize];
                    if check_gale_ryser(&a, &b).unwrap() != biregular_realizable(r1, n1, r2, n2) {
                        return Err(format!("biregular ({r1},{n1}) ({r2},{n2})"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

/// Number of random graphs on which search and brute-force orbits agree.
pub fn orbit_oracle(count: usize) -> Result<usize, String> {
    let mut r = rng("orbit-oracle");
    for i in 0..count {
        let g = mixed_graph(&mut r, 8);
        let fast = orbits(&g).map_err(|e| e.to_string())?;
        let slow = orbits_bruteforce(&g).map_err(|e| e.to_string())?;
        if fast.partition != slow.partition {
            return Err(format!(
                "graph {i} {:?}: search {:?} brute force {:?}",
                g.edges(),
                fast.partition.cells(),
                slow.partition.cells()
            ));
        }
    }
    Ok(count)
}

/// The permutation advancing every cluster block's local index by one.
pub fn block_rotation(part: &Partition) -> Permutation {
    let mut image = vec![0; part.n()];
    for cell in part.cells() {
        for (i, &v) in cell.iter().enumerate() {
            image[v] = cell[(i + 1) % cell.len()];
        }
    }
    Permutation::new(image).unwrap()
}

/// Instances for the refinement-chain check: every fixture and a batch of
/// random feasible quotients, each at a few scales, deterministic and
/// randomized.
pub fn chain_instances(random: usize) -> Vec<(String, QuotientGraph, u64)> {
    let mut out = Vec::new();
    for name in ["three_cluster.qg", "bipartite_pair.qg", "rigid_pair.qg"] {
        for s in 1..=4 {
            out.push((name.to_string(), quotient(name), s));
        }
    }
    let mut r = rng("chain");
    for i in 0..random {
        out.push((format!("random {i}"), random_feasible_quotient(&mut r, 4, 3), r.random_range(1..=2)));
    }
    out
}

pub struct ChainReport {
    pub deterministic: usize,
    pub randomized: usize,
    /// Randomized instances where the construction partition does not refine
    /// the orbits (expected: randomization breaks symmetry).
    pub construction_not_in_orbits: usize,
}

/// Deterministic output: construction ⊑ orbits ⊑ coarsest.
/// Randomized output: orbits ⊑ coarsest and construction ⊑ coarsest.
pub fn refinement_chain(random: usize) -> Result<ChainReport, String> {
    let mut report = ChainReport {
        deterministic: 0,
        randomized: 0,
        construction_not_in_orbits: 0,
    };
    for (i, (name, q, s)) in chain_instances(random).into_iter().enumerate() {
        let sol = solve_quotient(&q, s).map_err(|e| format!("{name}: {e}"))?;
        let (g, part) = generate(&q, &sol, CompositionChoice::Balanced).map_err(|e| e.to_string())?;
        let oag = orbits(&g).map_err(|e| format!("{name}: {e}"))?.partition;
        let mbc = coarsest_equitable(&g);
        if !(part.refines(&oag) && oag.refines(&mbc)) {
            return Err(format!("{name} s={s}: deterministic chain broken"));
        }
        report.deterministic += 1;

        let h = randomize(&g, &part, i as u64, 10.0).map_err(|e| e.to_string())?;
        let oag = orbits(&h).map_err(|e| format!("{name}: {e}"))?.partition;
        let mbc = coarsest_equitable(&h);
        if !(oag.refines(&mbc) && part.refines(&mbc)) {
            return Err(format!("{name} s={s}: randomized chain broken"));
        }
        if !part.refines(&oag) {
            report.construction_not_in_orbits += 1;
        }
        report.randomized += 1;
    }
    Ok(report)
}
