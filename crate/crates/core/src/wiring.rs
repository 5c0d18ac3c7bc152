//! Deterministic wiring of a full graph from a quotient and cluster sizes.
//!
//! Intra-cluster edges are circulant: local vertex `i` of cluster `k` joins
//! `i ± 1, …, i ± ⌊Q_kk / 2⌋` and, for odd `Q_kk`, the antipodal vertex
//! `i + n_k / 2`. Inter-cluster edges between `C_k` and `C_l` use offsets
//! built from `h = gcd(n_k, n_l)` and a composition `b` of `h` into `m`
//! parts: `u_i` joins `w_f` for `f = i + r₁h + (b₁ + … + b_r₂) mod n_l`.
//! Rotating every cluster's local indices by one maps both families onto
//! themselves.

use num_integer::Integer;
use rand::Rng;

use crate::error::{domain, invalid, Result};
use crate::graph::{Graph, Partition, Provenance};
use crate::quotient::QuotientGraph;
use crate::rng;
use crate::solver::{check_sizes, CardinalitySolution};

/// Circulant edge set of one cluster on local indices `0..n_k`, sorted.
pub fn wire_intra(n_k: usize, q_kk: usize) -> Result<Vec<(usize, usize)>> {
    if q_kk == 0 {
        return Ok(Vec::new());
    }
    if n_k <= q_kk {
        return Err(domain(format!(
            "cluster of size {n_k} cannot carry {q_kk} intra-cluster neighbors"
        )));
    }
    if q_kk % 2 == 1 && n_k % 2 == 1 {
        return Err(domain(format!(
            "odd intra-cluster degree {q_kk} needs an even cluster size, got {n_k}"
        )));
    }
    let mut edges = Vec::with_capacity(n_k * q_kk / 2 + 1);
    for i in 0..n_k {
        for j in 1..=q_kk / 2 {
            let t = (i + j) % n_k;
            edges.push((i.min(t), i.max(t)));
        }
        if q_kk % 2 == 1 {
            let t = (i + n_k / 2) % n_k;
            edges.push((i.min(t), i.max(t)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    debug_assert_eq!(edges.len(), n_k * q_kk / 2);
    Ok(edges)
}

/// Offset plan for the edges between clusters `C_k` and `C_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterClusterPlan {
    pub n_k: usize,
    pub n_l: usize,
    pub h: usize,
    pub d_k: usize,
    pub d_l: usize,
    pub m: usize,
    /// Composition of `h` into `m` positive parts.
    pub b: Vec<usize>,
}

impl InterClusterPlan {
    /// Plan with an explicit composition `b`. `q_kl` is the number of
    /// neighbors each `u ∈ C_k` has in `C_l`, `q_lk` the reverse.
    pub fn with_composition(
        n_k: usize,
        n_l: usize,
        q_kl: usize,
        q_lk: usize,
        b: Vec<usize>,
    ) -> Result<Self> {
        let mut plan = Self::skeleton(n_k, n_l, q_kl, q_lk)?;
        if b.len() != plan.m || b.contains(&0) || b.iter().sum::<usize>() != plan.h {
            return Err(invalid(format!(
                "b = {b:?} is not a composition of {} into {} positive parts",
                plan.h, plan.m
            )));
        }
        plan.b = b;
        Ok(plan)
    }

    fn skeleton(n_k: usize, n_l: usize, q_kl: usize, q_lk: usize) -> Result<Self> {
        if q_kl == 0 || q_lk == 0 {
            return Err(invalid("pair weights must be positive"));
        }
        if n_k * q_kl != n_l * q_lk || n_k < q_lk || n_l < q_kl {
            return Err(domain(format!(
                "sizes ({n_k}, {n_l}) cannot realize weights ({q_kl}, {q_lk})"
            )));
        }
        let h = n_k.gcd(&n_l);
        let (d_k, d_l) = (n_k / h, n_l / h);
        // n_k q_kl = n_l q_lk with gcd(d_k, d_l) = 1 forces d_k | q_lk.
        let m = q_lk / d_k;
        debug_assert_eq!(d_k * m, q_lk);
        debug_assert_eq!(d_l * m, q_kl);
        Ok(InterClusterPlan {
            n_k,
            n_l,
            h,
            d_k,
            d_l,
            m,
            b: Vec::new(),
        })
    }

    /// Cumulative sums `b₁ + … + b_r` for `r = 1..=m`.
    fn prefix_sums(&self) -> Vec<usize> {
        self.b
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }
}

/// Balanced composition: the first `h mod m` parts get one extra unit.
pub fn balanced_composition(h: usize, m: usize) -> Vec<usize> {
    let (q, r) = (h / m, h % m);
    (0..m).map(|j| if j < r { q + 1 } else { q }).collect()
}

/// Uniformly random composition of `h` into `m` positive parts.
pub fn random_composition<R: Rng + ?Sized>(h: usize, m: usize, rng: &mut R) -> Vec<usize> {
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, h - 1, m - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(h);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let part = c - prev;
            prev = c;
            part
        })
        .collect()
}

/// Plan with the balanced composition.
pub fn make_plan(n_k: usize, n_l: usize, q_kl: usize, q_lk: usize) -> Result<InterClusterPlan> {
    let mut plan = InterClusterPlan::skeleton(n_k, n_l, q_kl, q_lk)?;
    plan.b = balanced_composition(plan.h, plan.m);
    Ok(plan)
}

/// Plan with a uniformly sampled composition.
pub fn make_plan_random<R: Rng + ?Sized>(
    n_k: usize,
    n_l: usize,
    q_kl: usize,
    q_lk: usize,
    rng: &mut R,
) -> Result<InterClusterPlan> {
    let mut plan = InterClusterPlan::skeleton(n_k, n_l, q_kl, q_lk)?;
    plan.b = random_composition(plan.h, plan.m, rng);
    Ok(plan)
}

/// Edges `(u, w)` (local indices in `C_k`, `C_l`) enumerated from the `C_k`
/// side, sorted.
pub fn wire_inter(plan: &InterClusterPlan) -> Vec<(usize, usize)> {
    let prefix = plan.prefix_sums();
    let mut edges = Vec::with_capacity(plan.n_k * plan.d_l * plan.m);
    for i in 0..plan.n_k {
        for r1 in 0..plan.d_l {
            for &s in &prefix {
                edges.push((i, (i + r1 * plan.h + s) % plan.n_l));
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// The same edge family enumerated from the `C_l` side with the reversed
/// composition; returned as `(u, w)` pairs, sorted.
pub fn wire_inter_dual(plan: &InterClusterPlan) -> Vec<(usize, usize)> {
    let suffix: Vec<usize> = plan
        .b
        .iter()
        .rev()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let mut edges = Vec::with_capacity(plan.n_l * plan.d_k * plan.m);
    for i in 0..plan.n_l {
        for r3 in 0..plan.d_k {
            for &s in &suffix {
                edges.push(((i + r3 * plan.h + s) % plan.n_k, i));
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// How inter-cluster compositions are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompositionChoice {
    #[default]
    Balanced,
    /// Seeded uniform compositions, one stream per cluster pair.
    Random { seed: u64 },
}

fn to_usize(x: u64) -> Result<usize> {
    usize::try_from(x).map_err(|_| invalid(format!("{x} does not fit in usize")))
}

/// Wires the full graph. Cluster `i` occupies the contiguous vertex block
/// after clusters `0..i`; every edge is tagged with its quotient feature.
pub fn generate(
    q: &QuotientGraph,
    sol: &CardinalitySolution,
    choice: CompositionChoice,
) -> Result<(Graph, Partition)> {
    check_sizes(q, &sol.n)?;
    let sizes: Vec<usize> = sol.n.iter().map(|&x| to_usize(x)).collect::<Result<_>>()?;
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let n: usize = sizes.iter().sum();

    let mut edges = Vec::new();
    for (k, &size) in sizes.iter().enumerate() {
        let tag = Some(Provenance::SelfLoop(k));
        for (a, b) in wire_intra(size, to_usize(q.self_loop(k))?)? {
            edges.push(((offsets[k] + a, offsets[k] + b), tag));
        }
    }
    for ((k, l), w) in q.pairs() {
        let (n_k, n_l) = (sizes[k], sizes[l]);
        let (q_kl, q_lk) = (to_usize(w.low)?, to_usize(w.high)?);
        let plan = match choice {
            CompositionChoice::Balanced => make_plan(n_k, n_l, q_kl, q_lk)?,
            CompositionChoice::Random { seed } => {
                let mut r = rng::stream(seed, "composition", &[k as u64, l as u64]);
                make_plan_random(n_k, n_l, q_kl, q_lk, &mut r)?
            }
        };
        let tag = Some(Provenance::Pair(k, l));
        for (u, v) in wire_inter(&plan) {
            edges.push(((offsets[k] + u, offsets[l] + v), tag));
        }
    }
    let graph = Graph::with_provenance(n, edges)?;
    let part = Partition::from_sizes(&sizes)?;
    Ok((graph, part))
}
