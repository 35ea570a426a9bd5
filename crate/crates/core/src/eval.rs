//! Reconstruction-ratio sweeps over the number of sampled columns.
//!
//! For each `c`, `groups` repetition groups are run. Each group performs
//! `trials` CUR decompositions (whose column stage is the CX decomposition)
//! and keeps the minimum of every ratio; the report then gives the mean,
//! median and minimum of those per-group minima:
//!
//! * `theta1 = ‖A − CC⁺A‖_F / ‖A − A_k‖_F`
//! * `theta2 = ‖A − CC⁺A_k‖_F / ‖A − A_k‖_F`
//! * `theta3 = ‖A − CUR‖_F / ‖A − A_k‖_F`, with `r = ⌈r_multiplier · c⌉`.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomp::LowRankProblem;
use crate::error::{Error, Result};
use crate::io::format_f64;
use crate::json::{f64_or_inf, to_string_pretty};
use crate::linalg::{frobenius_norm, DenseMatrix};
use crate::rng::derive_seed;
use crate::sampling::Method;

pub const SCHEMA_VERSION: u32 = 1;

/// Leading singular values recorded in the input descriptor.
const SPECTRUM_PREFIX: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub k: usize,
    pub c_values: Vec<usize>,
    /// Decompositions per repetition group (the minimum is kept).
    pub trials: usize,
    /// Repetition groups averaged per `c`.
    pub groups: usize,
    pub method: Method,
    /// Rows sampled per column for CUR.
    pub r_multiplier: f64,
    pub seed: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            k: 1,
            c_values: Vec::new(),
            trials: 5,
            groups: 10,
            method: Method::Expected,
            r_multiplier: 2.0,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDescriptor {
    pub rows: usize,
    pub cols: usize,
    pub source: String,
    pub frobenius_norm: f64,
    pub leading_singular_values: Vec<f64>,
    pub effective_rank: usize,
    pub best_rank_k_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    #[serde(with = "f64_or_inf")]
    pub mean: f64,
    #[serde(with = "f64_or_inf")]
    pub median: f64,
    #[serde(with = "f64_or_inf")]
    pub min: f64,
}

impl Stats {
    /// Panics on an empty slice.
    pub fn from_values(values: &[f64]) -> Self {
        assert!(!values.is_empty());
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
        };
        Self {
            mean: sorted.iter().sum::<f64>() / n as f64,
            median,
            min: sorted[0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub c: usize,
    pub r: usize,
    pub method: Method,
    pub trials: usize,
    pub groups: usize,
    pub theta1: Stats,
    pub theta2: Stats,
    pub theta3: Stats,
    /// Some run hit a numerically zero `‖A − A_k‖_F`.
    pub zero_denominator: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_seconds: f64,
    pub per_c_seconds: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub schema_version: u32,
    pub input: InputDescriptor,
    pub params: EvalConfig,
    pub sweep: Vec<SweepRow>,
    pub seed: u64,
    /// Wall-clock times; only filled on request so that reports stay reproducible.
    pub timing: Option<Timing>,
}

impl EvalReport {
    pub fn to_json(&self) -> Result<String> {
        to_string_pretty(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: Self = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("malformed report: {e}")))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(format!(
                "report schema version {} is not supported (expected {SCHEMA_VERSION})",
                report.schema_version
            )));
        }
        Ok(report)
    }

    /// One line per sweep row, for plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "c,r,method,trials,groups,theta1_mean,theta1_median,theta1_min,\
             theta2_mean,theta2_median,theta2_min,theta3_mean,theta3_median,theta3_min\n",
        );
        for row in &self.sweep {
            let mut fields = vec![
                row.c.to_string(),
                row.r.to_string(),
                row.method.to_string(),
                row.trials.to_string(),
                row.groups.to_string(),
            ];
            for s in [&row.theta1, &row.theta2, &row.theta3] {
                fields.extend([s.mean, s.median, s.min].map(format_f64));
            }
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

struct GroupMin {
    theta: [f64; 3],
    zero_denominator: bool,
}

fn run_group(problem: &LowRankProblem, c: usize, r: usize, cfg: &EvalConfig, seed: u64) -> Result<GroupMin> {
    let mut theta = [f64::INFINITY; 3];
    let mut zero_denominator = false;
    for t in 0..cfg.trials {
        let res = problem.cur(c, r, cfg.method, derive_seed(seed, t as u64))?;
        for (slot, v) in theta.iter_mut().zip([res.cx.theta1, res.cx.theta2, res.theta3]) {
            *slot = slot.min(v);
        }
        zero_denominator |= res.cx.zero_denominator;
    }
    Ok(GroupMin { theta, zero_denominator })
}

/// Run the sweep described by `cfg` on `a`.
pub fn run_eval(a: &DenseMatrix, source: &str, cfg: &EvalConfig, with_timing: bool) -> Result<EvalReport> {
    if cfg.c_values.is_empty() {
        return Err(Error::invalid("at least one column count is required"));
    }
    if cfg.c_values.contains(&0) {
        return Err(Error::invalid("column counts must be positive"));
    }
    if cfg.trials == 0 || cfg.groups == 0 {
        return Err(Error::invalid("trials and groups must be positive"));
    }
    if !(cfg.r_multiplier > 0.0 && cfg.r_multiplier.is_finite()) {
        return Err(Error::invalid("row multiplier must be positive"));
    }
    let start = Instant::now();
    let problem = LowRankProblem::new(a, cfg.k)?;
    let mut c_values = cfg.c_values.clone();
    c_values.sort_unstable();
    c_values.dedup();

    let mut sweep = Vec::with_capacity(c_values.len());
    let mut per_c_seconds = Vec::with_capacity(c_values.len());
    for &c in &c_values {
        let t0 = Instant::now();
        let r = ((cfg.r_multiplier * c as f64).ceil() as usize).max(1);
        let c_seed = derive_seed(cfg.seed, c as u64);
        let groups = (0..cfg.groups)
            .into_par_iter()
            .map(|g| run_group(&problem, c, r, cfg, derive_seed(c_seed, g as u64)))
            .collect::<Result<Vec<_>>>()?;
        let column = |i: usize| Stats::from_values(&groups.iter().map(|g| g.theta[i]).collect::<Vec<_>>());
        sweep.push(SweepRow {
            c,
            r,
            method: cfg.method,
            trials: cfg.trials,
            groups: cfg.groups,
            theta1: column(0),
            theta2: column(1),
            theta3: column(2),
            zero_denominator: groups.iter().any(|g| g.zero_denominator),
        });
        per_c_seconds.push(t0.elapsed().as_secs_f64());
    }

    let svd = problem.svd();
    let input = InputDescriptor {
        rows: a.rows(),
        cols: a.cols(),
        source: source.to_string(),
        frobenius_norm: frobenius_norm(a),
        leading_singular_values: svd.sigma.iter().take(SPECTRUM_PREFIX).copied().collect(),
        effective_rank: svd.effective_rank,
        best_rank_k_error: problem.best_rank_k_error(),
    };
    let params = EvalConfig {
        c_values,
        ..cfg.clone()
    };
    Ok(EvalReport {
        schema_version: SCHEMA_VERSION,
        input,
        seed: cfg.seed,
        params,
        sweep,
        timing: with_timing.then(|| Timing {
            total_seconds: start.elapsed().as_secs_f64(),
            per_c_seconds,
        }),
    })
}
