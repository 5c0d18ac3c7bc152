//! Alignment between the orbit partition and the coarsest equitable
//! partition, and the scale sweep built on it.

use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::automorphism::orbits;
use crate::error::{domain, invalid, Error, Result};
use crate::quotient::{coarsest_equitable, QuotientGraph};
use crate::rewire::{randomize, DEFAULT_SWAPS_PER_EDGE};
use crate::rng::derive_seed;
use crate::solver::solve_quotient;
use crate::wiring::{generate, CompositionChoice};

/// `f = (n - oag) / (n - mbc)`, or 1 when `n == mbc` (then also `oag == n`).
pub fn alignment_metric(n: u64, mbc_size: u64, oag_size: u64) -> Result<Ratio<u64>> {
    if oag_size < mbc_size {
        return Err(domain(format!(
            "orbit count {oag_size} below coarsest partition size {mbc_size}"
        )));
    }
    if oag_size > n {
        return Err(domain(format!("orbit count {oag_size} exceeds vertex count {n}")));
    }
    if n == mbc_size {
        return Ok(Ratio::from_integer(1));
    }
    Ok(Ratio::new(n - oag_size, n - mbc_size))
}

/// One analyzed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentRecord {
    pub s: u64,
    pub trial: u64,
    pub n: u64,
    pub mbc_size: u64,
    pub oag_size: u64,
    pub f: Ratio<u64>,
    /// `n == mbc_size`, so `f` is 1 by definition rather than by measurement.
    pub degenerate: bool,
}

impl AlignmentRecord {
    pub fn from_sizes(s: u64, trial: u64, n: u64, mbc_size: u64, oag_size: u64) -> Result<Self> {
        Ok(AlignmentRecord {
            s,
            trial,
            n,
            mbc_size,
            oag_size,
            f: alignment_metric(n, mbc_size, oag_size)?,
            degenerate: n == mbc_size,
        })
    }

    pub fn f64(&self) -> f64 {
        ratio_f64(&self.f)
    }
}

fn ratio_f64(r: &Ratio<u64>) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub scales: Vec<u64>,
    pub trials: u64,
    pub seed: u64,
    pub swaps_per_edge: f64,
    /// Random inter-cluster compositions, seeded per trial.
    pub random_compositions: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            scales: (1..=10).collect(),
            trials: 100,
            seed: 0,
            swaps_per_edge: DEFAULT_SWAPS_PER_EDGE,
            random_compositions: false,
        }
    }
}

/// Generates, randomizes and analyzes one graph of the sweep.
pub fn run_trial(q: &QuotientGraph, s: u64, trial: u64, cfg: &SweepConfig) -> Result<AlignmentRecord> {
    let sol = solve_quotient(q, s)?;
    let trial_seed = derive_seed(cfg.seed, "trial", &[s, trial]);
    let choice = if cfg.random_compositions {
        CompositionChoice::Random {
            seed: derive_seed(trial_seed, "b", &[]),
        }
    } else {
        CompositionChoice::Balanced
    };
    let (g, part) = generate(q, &sol, choice)?;
    let g = randomize(&g, &part, trial_seed, cfg.swaps_per_edge)?;
    let mbc = coarsest_equitable(&g);
    let oag = orbits(&g)?;
    AlignmentRecord::from_sizes(s, trial, g.n() as u64, mbc.p() as u64, oag.len() as u64)
}

/// Runs every `(s, trial)` in parallel; records come back in `(s, trial)`
/// order regardless of scheduling.
pub fn sweep(q: &QuotientGraph, cfg: &SweepConfig) -> Result<Vec<AlignmentRecord>> {
    if cfg.scales.contains(&0) {
        return Err(invalid("scale factors must be at least 1"));
    }
    // Fails early on an infeasible quotient, even with no trials.
    match solve_quotient(q, 1) {
        Err(Error::Infeasible) => return Err(domain("quotient graph is infeasible")),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    let jobs: Vec<(u64, u64)> = cfg
        .scales
        .iter()
        .flat_map(|&s| (0..cfg.trials).map(move |t| (s, t)))
        .collect();
    jobs.par_iter()
        .map(|&(s, t)| run_trial(q, s, t, cfg))
        .collect()
}

/// Per-scale mean and population standard deviation of `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleSummary {
    pub s: u64,
    pub mean_f: f64,
    pub std_f: f64,
    pub trials: u64,
}

/// Groups consecutive records by scale, in first-appearance order.
pub fn summarize(records: &[AlignmentRecord]) -> Vec<ScaleSummary> {
    let mut out: Vec<(u64, Vec<f64>)> = Vec::new();
    for r in records {
        match out.iter_mut().find(|(s, _)| *s == r.s) {
            Some((_, fs)) => fs.push(r.f64()),
            None => out.push((r.s, vec![r.f64()])),
        }
    }
    out.into_iter()
        .map(|(s, fs)| {
            let k = fs.len() as f64;
            let mean = fs.iter().sum::<f64>() / k;
            let var = fs.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / k;
            ScaleSummary {
                s,
                mean_f: mean,
                std_f: var.sqrt(),
                trials: fs.len() as u64,
            }
        })
        .collect()
}

/// `s,trial,n,mbc,oag,f`, one row per record.
pub fn records_csv(records: &[AlignmentRecord]) -> String {
    let mut out = String::from("s,trial,n,mbc,oag,f\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.6}",
            r.s,
            r.trial,
            r.n,
            r.mbc_size,
            r.oag_size,
            r.f64()
        );
    }
    out
}

/// `s,mean_f,std_f,trials`, one row per scale.
pub fn summary_csv(summary: &[ScaleSummary]) -> String {
    let mut out = String::from("s,mean_f,std_f,trials\n");
    for r in summary {
        let _ = writeln!(out, "{},{:.6},{:.6},{}", r.s, r.mean_f, r.std_f, r.trials);
    }
    out
}
