//! Cluster-size constraint systems and the feasibility test.
//!
//! A quotient pair `(j, k)` forces `Q_jk n_j = Q_kj n_k`. Substituting
//! `n_i = 2 x_i` for clusters with an odd self-loop count (and `n_i = x_i`
//! otherwise) turns every pair into one homogeneous row with a single
//! positive and a single negative coefficient. Such a system is a graph of
//! ratio constraints over clusters, so its positive null space is found by
//! propagating exact ratios along a spanning forest and checking the
//! remaining rows.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::quotient::QuotientGraph;

/// One homogeneous constraint `pos_coef · x[pos] − neg_coef · x[neg] = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioRow {
    pub pos: usize,
    pub pos_coef: u64,
    pub neg: usize,
    pub neg_coef: u64,
}

/// The linear system `A x = 0, x ≥ x_lower` over cluster variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilitySystem {
    p: usize,
    rows: Vec<RatioRow>,
    x_lower: Vec<u64>,
    doubled: Vec<bool>,
}

impl FeasibilitySystem {
    /// Builds a system from a dense matrix. Every row needs exactly one
    /// positive and one negative entry; `doubled[i]` marks `n_i = 2 x_i`.
    pub fn from_matrix(matrix: &[Vec<i64>], x_lower: Vec<u64>, doubled: Vec<bool>) -> Result<Self> {
        let p = x_lower.len();
        if doubled.len() != p {
            return Err(invalid("parity flags and lower bounds differ in length"));
        }
        if let Some(i) = x_lower.iter().position(|&l| l == 0) {
            return Err(invalid(format!("lower bound of x[{i}] must be at least 1")));
        }
        let mut rows = Vec::with_capacity(matrix.len());
        for (r, row) in matrix.iter().enumerate() {
            if row.len() != p {
                return Err(invalid(format!("row {r} has {} columns, expected {p}", row.len())));
            }
            let pos: Vec<usize> = (0..p).filter(|&c| row[c] > 0).collect();
            let neg: Vec<usize> = (0..p).filter(|&c| row[c] < 0).collect();
            if pos.len() != 1 || neg.len() != 1 {
                return Err(invalid(format!(
                    "row {r} must have one positive and one negative entry"
                )));
            }
            rows.push(RatioRow {
                pos: pos[0],
                pos_coef: row[pos[0]].unsigned_abs(),
                neg: neg[0],
                neg_coef: row[neg[0]].unsigned_abs(),
            });
        }
        Ok(FeasibilitySystem {
            p,
            rows,
            x_lower,
            doubled,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn rows(&self) -> &[RatioRow] {
        &self.rows
    }

    pub fn x_lower(&self) -> &[u64] {
        &self.x_lower
    }

    /// `true` where the cluster size is twice its variable (odd self-loop).
    pub fn doubled(&self) -> &[bool] {
        &self.doubled
    }

    /// Dense form of `A`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.p];
                row[r.pos] = r.pos_coef as i64;
                row[r.neg] = -(r.neg_coef as i64);
                row
            })
            .collect()
    }
}

/// Builds `A`, the lower bounds and the parity flags for a quotient.
pub fn build_system(q: &QuotientGraph) -> FeasibilitySystem {
    let p = q.p();
    let doubled: Vec<bool> = (0..p).map(|i| q.self_loop(i) % 2 == 1).collect();
    let factor = |i: usize| if doubled[i] { 2 } else { 1 };
    let rows = q
        .pairs()
        .map(|((j, k), w)| RatioRow {
            pos: j,
            pos_coef: factor(j) * w.low,
            neg: k,
            neg_coef: factor(k) * w.high,
        })
        .collect();

    // n_i must reach Q_ii + 1 and every Q_ji for pairs touching i.
    let mut bound: Vec<u64> = q.self_loops().iter().map(|&d| d + 1).collect();
    for ((j, k), w) in q.pairs() {
        bound[j] = bound[j].max(w.high);
        bound[k] = bound[k].max(w.low);
    }
    let x_lower = bound
        .iter()
        .zip(&doubled)
        .map(|(&b, &d)| if d { b.div_ceil(2) } else { b })
        .collect();
    FeasibilitySystem {
        p,
        rows,
        x_lower,
        doubled,
    }
}

/// Positive null-space generators, one primitive block per connected
/// component of the constraint graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Columns of each component, ascending; components ordered by their
    /// smallest column.
    pub components: Vec<Vec<usize>>,
    /// Strictly positive `x` with `A x = 0`; the entries of every component
    /// have gcd 1.
    pub vector: Vec<u64>,
}

/// An inconsistent cycle of constraint rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Indices into [`FeasibilitySystem::rows`].
    pub rows: Vec<usize>,
    /// The cycle's cluster pairs as `(min, max)`, sorted.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Certificate),
    Infeasible(Witness),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Feasibility::Feasible(c) => Some(c),
            Feasibility::Infeasible(_) => None,
        }
    }
}

/// Decides whether `A x = 0` has a strictly positive solution.
pub fn is_feasible(sys: &FeasibilitySystem) -> Result<Feasibility> {
    let p = sys.p;
    // incidence: (row index, other column, ratio x[other] / x[this])
    let mut incident: Vec<Vec<(usize, usize, BigRational)>> = vec![Vec::new(); p];
    for (r, row) in sys.rows.iter().enumerate() {
        let pc = BigInt::from(row.pos_coef);
        let nc = BigInt::from(row.neg_coef);
        // pos_coef x[pos] = neg_coef x[neg]
        incident[row.pos].push((r, row.neg, BigRational::new(pc.clone(), nc.clone())));
        incident[row.neg].push((r, row.pos, BigRational::new(nc, pc)));
    }

    let mut value: Vec<Option<BigRational>> = vec![None; p];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; p];
    let mut depth = vec![0usize; p];
    let mut components = Vec::new();

    for root in 0..p {
        if value[root].is_some() {
            continue;
        }
        value[root] = Some(BigRational::one());
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            let vc = value[c].clone().unwrap();
            for (r, other, ratio) in &incident[c] {
                let expected = &vc * ratio;
                match &value[*other] {
                    None => {
                        value[*other] = Some(expected);
                        parent[*other] = Some((c, *r));
                        depth[*other] = depth[c] + 1;
                        comp.push(*other);
                        queue.push_back(*other);
                    }
                    Some(v) if *v != expected => {
                        return Ok(Feasibility::Infeasible(cycle_witness(
                            sys, &parent, &depth, c, *other, *r,
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }

    let mut vector = vec![0u64; p];
    for comp in &components {
        let denom_lcm = comp
            .iter()
            .map(|&c| value[c].as_ref().unwrap().denom().clone())
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let scaled: Vec<BigInt> = comp
            .iter()
            .map(|&c| (value[c].as_ref().unwrap() * &denom_lcm).to_integer())
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&c, x) in comp.iter().zip(&scaled) {
            let entry = x / &g;
            debug_assert!(entry.is_positive());
            vector[c] = entry
                .to_u64()
                .ok_or_else(|| Error::Overflow(format!("null-space entry {entry} exceeds u64")))?;
        }
    }
    Ok(Feasibility::Feasible(Certificate { components, vector }))
}

fn cycle_witness(
    sys: &FeasibilitySystem,
    parent: &[Option<(usize, usize)>],
    depth: &[usize],
    a: usize,
    b: usize,
    closing_row: usize,
) -> Witness {
    let mut rows = vec![closing_row];
    let (mut x, mut y) = (a, b);
    while x != y {
        if depth[x] >= depth[y] {
            let (up, r) = parent[x].unwrap();
            rows.push(r);
            x = up;
        } else {
            let (up, r) = parent[y].unwrap();
            rows.push(r);
            y = up;
        }
    }
    rows.sort_unstable();
    rows.dedup();
    let mut pairs: Vec<(usize, usize)> = rows
        .iter()
        .map(|&r| {
            let row = sys.rows[r];
            (row.pos.min(row.neg), row.pos.max(row.neg))
        })
        .collect();
    pairs.sort_unstable();
    Witness { rows, pairs }
}

fn check_non_increasing(seq: &[u64], name: &str) -> Result<()> {
    if seq.windows(2).any(|w| w[0] < w[1]) {
        return Err(invalid(format!("{name} must be non-increasing")));
    }
    Ok(())
}

/// Erdős–Gallai test: is `seq` the degree sequence of a simple graph?
pub fn check_erdos_gallai(seq: &[u64]) -> Result<bool> {
    check_non_increasing(seq, "degree sequence")?;
    let total: u64 = seq.iter().sum();
    if total % 2 == 1 {
        return Ok(false);
    }
    let mut head = 0u64;
    for k in 1..=seq.len() {
        head += seq[k - 1];
        let kk = k as u64;
        let tail: u64 = seq[k..].iter().map(|&a| a.min(kk)).sum();
        if head > kk * (kk - 1) + tail {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gale–Ryser test: are `a` and `b` the two sides' degree sequences of a
/// simple bipartite graph?
pub fn check_gale_ryser(a: &[u64], b: &[u64]) -> Result<bool> {
    check_non_increasing(a, "first sequence")?;
    check_non_increasing(b, "second sequence")?;
    if a.iter().sum::<u64>() != b.iter().sum::<u64>() {
        return Ok(false);
    }
    let mut head = 0u64;
    for k in 1..=a.len() {
        head += a[k - 1];
        let cap: u64 = b.iter().map(|&x| x.min(k as u64)).sum();
        if head > cap {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closed form for constant sequences: `r`-regular graphs on `n` vertices
/// exist iff `n ≥ r + 1` and `r n` is even.
pub fn regular_realizable(r: u64, n: u64) -> bool {
    n > r && (r * n).is_multiple_of(2)
}

/// Closed form for constant bipartite sequences: `n1` vertices of degree
/// `r1` against `n2` vertices of degree `r2`.
pub fn biregular_realizable(r1: u64, n1: u64, r2: u64, n2: u64) -> bool {
    r1 <= n2 && r2 <= n1 && r1 * n1 == r2 * n2
}
