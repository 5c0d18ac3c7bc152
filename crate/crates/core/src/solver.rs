//! Minimal cluster cardinalities.
//!
//! Within one connected component of the constraint graph the solutions of
//! `A x = 0` form the ray `t · v` through the primitive certificate `v`, so
//! the integer program `min cᵀx, A x = 0, x ≥ x_lower` is solved by the
//! smallest `t` meeting every lower bound: `t = max_i ⌈x_lower_i / v_i⌉`.
//! That choice is optimal for every strictly positive cost vector.

use num_rational::Ratio;

use crate::error::{domain, invalid, Error, Result};
use crate::feasibility::{is_feasible, Feasibility, FeasibilitySystem};
use crate::quotient::QuotientGraph;

/// Integer program solution and the resulting cluster sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalitySolution {
    /// Unscaled program variables.
    pub x: Vec<u64>,
    /// Cluster sizes `n_i = s x_i`, doubled for odd self-loops.
    pub n: Vec<u64>,
    pub s: u64,
    pub total_n: u64,
    doubled: Vec<bool>,
}

impl CardinalitySolution {
    fn from_parts(x: Vec<u64>, doubled: Vec<bool>, s: u64) -> Result<Self> {
        let n = x
            .iter()
            .zip(&doubled)
            .map(|(&xi, &d)| {
                xi.checked_mul(s)
                    .and_then(|v| v.checked_mul(if d { 2 } else { 1 }))
                    .ok_or_else(|| Error::Overflow("cluster size exceeds u64".into()))
            })
            .collect::<Result<Vec<u64>>>()?;
        let total_n = n
            .iter()
            .try_fold(0u64, |acc, &v| acc.checked_add(v))
            .ok_or_else(|| Error::Overflow("total vertex count exceeds u64".into()))?;
        Ok(CardinalitySolution {
            x,
            n,
            s,
            total_n,
            doubled,
        })
    }

    /// The same solution with every cluster size multiplied by `factor`.
    pub fn scale(&self, factor: u64) -> Result<Self> {
        if factor == 0 {
            return Err(invalid("scale factor must be at least 1"));
        }
        let s = self
            .s
            .checked_mul(factor)
            .ok_or_else(|| Error::Overflow("scale factor exceeds u64".into()))?;
        Self::from_parts(self.x.clone(), self.doubled.clone(), s)
    }

    /// Objective value `cᵀx` for the unscaled variables.
    pub fn objective(&self, cost: &[Ratio<u64>]) -> Ratio<u64> {
        cost.iter()
            .zip(&self.x)
            .map(|(c, &x)| c * Ratio::from_integer(x))
            .sum()
    }
}

/// Solves the minimal-cardinality program. `cost` defaults to all ones and
/// must be strictly positive; any such cost has the same minimizer.
pub fn solve_minimal(sys: &FeasibilitySystem, cost: Option<&[Ratio<u64>]>) -> Result<CardinalitySolution> {
    if let Some(cost) = cost {
        if cost.len() != sys.p() {
            return Err(invalid(format!(
                "cost vector has {} entries, expected {}",
                cost.len(),
                sys.p()
            )));
        }
        if cost.iter().any(|c| *c == Ratio::from_integer(0)) {
            return Err(invalid("cost vector must be strictly positive"));
        }
    }
    let cert = match is_feasible(sys)? {
        Feasibility::Feasible(c) => c,
        Feasibility::Infeasible(_) => return Err(Error::Infeasible),
    };
    let mut x = vec![0u64; sys.p()];
    for comp in &cert.components {
        let t = comp
            .iter()
            .map(|&c| sys.x_lower()[c].div_ceil(cert.vector[c]))
            .max()
            .unwrap_or(1)
            .max(1);
        for &c in comp {
            x[c] = cert.vector[c]
                .checked_mul(t)
                .ok_or_else(|| Error::Overflow("program variable exceeds u64".into()))?;
        }
    }
    CardinalitySolution::from_parts(x, sys.doubled().to_vec(), 1)
}

/// Checks cluster sizes against every realizability constraint of `q`:
/// `n_i > Q_ii`, `n_i ≥ Q_ji` for incident pairs, `Q_ii n_i` even and
/// `Q_jk n_j = Q_kj n_k` per pair.
pub fn check_sizes(q: &QuotientGraph, n: &[u64]) -> Result<()> {
    if n.len() != q.p() {
        return Err(invalid(format!("{} sizes for {} clusters", n.len(), q.p())));
    }
    for (i, &ni) in n.iter().enumerate() {
        let d = q.self_loop(i);
        if ni <= d {
            return Err(domain(format!("cluster {}: size {ni} must exceed self-loop {d}", i + 1)));
        }
        if (d * ni) % 2 == 1 {
            return Err(domain(format!(
                "cluster {}: odd self-loop {d} needs an even size, got {ni}",
                i + 1
            )));
        }
    }
    for ((j, k), w) in q.pairs() {
        if n[j] < w.high || n[k] < w.low {
            return Err(domain(format!(
                "pair ({}, {}): sizes ({}, {}) too small for weights ({}, {})",
                j + 1,
                k + 1,
                n[j],
                n[k],
                w.low,
                w.high
            )));
        }
        if w.low as u128 * n[j] as u128 != w.high as u128 * n[k] as u128 {
            return Err(domain(format!(
                "pair ({}, {}): {} * {} != {} * {}",
                j + 1,
                k + 1,
                w.low,
                n[j],
                w.high,
                n[k]
            )));
        }
    }
    Ok(())
}

/// Feasibility, minimal sizes and scaling in one call.
pub fn solve_quotient(q: &QuotientGraph, scale: u64) -> Result<CardinalitySolution> {
    let sys = crate::feasibility::build_system(q);
    solve_minimal(&sys, None)?.scale(scale)
}
