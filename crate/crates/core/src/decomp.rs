//! CX and CUR decompositions by subspace sampling.
//!
//! [`LowRankProblem`] holds everything that depends only on `A` and `k`
//! (the truncated SVD, `A_k`, the column probabilities), so repeated trials
//! for boosting or evaluation sweeps pay for one SVD of `A`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    frobenius_norm, pinv_from_svd, pseudoinverse, svd, svd_truncated, DenseMatrix, TruncatedSvd,
    DEFAULT_RANK_TOL,
};
use crate::rng::derive_seed;
use crate::sampling::{
    apply_column_sample, apply_row_sample, column_subspace_probs, row_subspace_probs, sample,
    Method, SamplingPlan, SubspaceProbs,
};

/// Constant in the worst-case sample sizes `3200 k²/ε²` and `3200 c²/ε²`.
pub const WORST_CASE_CONSTANT: f64 = 3200.0;

/// A tail error below this fraction of `‖A‖_F` counts as zero when forming ratios.
const ZERO_TAIL_REL: f64 = 1e-12;
/// A reconstruction error below this fraction of `‖A‖_F` counts as exact.
const ZERO_ERROR_REL: f64 = 1e-8;

/// Seed index reserved for the row stage of CUR.
const ROW_STAGE: u64 = 0x524f_5753;

/// Columns sufficient for a `(1+ε)` CX bound with Exactly(c): `3200 k²/ε²`.
pub fn columns_for_cx(k: usize, epsilon: f64) -> f64 {
    WORST_CASE_CONSTANT * (k * k) as f64 / (epsilon * epsilon)
}

/// Rows sufficient for a `(1+ε)` CUR-vs-CX bound with Exactly(r): `3200 c²/ε²`.
pub fn rows_for_cur(c: usize, epsilon: f64) -> f64 {
    WORST_CASE_CONSTANT * (c * c) as f64 / (epsilon * epsilon)
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("delta {delta} must lie in (0, 1)")))
    }
}

fn ceil_trials(x: f64) -> usize {
    // Guard against ln() landing a hair above an exact integer.
    ((x - 1e-12).ceil() as usize).max(1)
}

/// Independent CX trials needed for failure probability `δ`: `⌈ln(1/δ)⌉`.
pub fn cx_boost_trials(delta: f64) -> Result<usize> {
    check_delta(delta)?;
    Ok(ceil_trials((1.0 / delta).ln()))
}

/// Trials per stage for boosted CUR: `⌈ln(2/δ)⌉`.
pub fn cur_boost_trials(delta: f64) -> Result<usize> {
    check_delta(delta)?;
    Ok(ceil_trials((2.0 / delta).ln()))
}

/// Seed used by boosting trial `t`.
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    derive_seed(seed, t as u64)
}

/// `num / den`, with zero denominators mapped to 0 (numerator also ≈ 0) or +∞.
fn error_ratio(num: f64, den: f64, scale: f64) -> (f64, bool) {
    if den > ZERO_TAIL_REL * scale {
        (num / den, false)
    } else if num <= ZERO_ERROR_REL * scale {
        (0.0, true)
    } else {
        (f64::INFINITY, true)
    }
}

/// Output of a CX decomposition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CxResult {
    pub plan: SamplingPlan,
    /// Rank parameter actually used (the effective rank if smaller than requested).
    pub k: usize,
    /// `m × c′` rescaled columns of `A`.
    pub c: DenseMatrix,
    /// `‖A − C C⁺ A‖_F`.
    pub error_frob: f64,
    /// `‖A − C C⁺ A_k‖_F`.
    pub projected_rank_k_error: f64,
    /// `‖A − C (P_k C)⁺ P_k A‖_F`, filled by the rank-restricted variant.
    pub error_rank_k_frob: Option<f64>,
    /// `‖A − A_k‖_F`.
    pub best_rank_k_error: f64,
    pub theta1: f64,
    pub theta2: f64,
    /// `‖A − A_k‖_F` was numerically zero; see [`error_ratio`] for the convention.
    pub zero_denominator: bool,
}

/// Output of a CUR decomposition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurResult {
    /// Column stage, including `C` and its CX errors.
    pub cx: CxResult,
    pub row_plan: SamplingPlan,
    /// `r′ × n` rescaled rows of `A`.
    pub r: DenseMatrix,
    /// `r′ × c′` rescaled rows of `C`.
    pub w: DenseMatrix,
    /// `c′ × r′`, `W⁺`.
    pub u: DenseMatrix,
    /// `‖A − C U R‖_F`.
    pub error_frob: f64,
    pub theta3: f64,
}

impl CurResult {
    pub fn reconstruct(&self) -> DenseMatrix {
        self.cx.c.matmul(&self.u).matmul(&self.r)
    }
}

/// Result of a boosted run with the per-trial errors it chose from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Boosted<T> {
    pub best: T,
    pub column_errors: Vec<f64>,
    pub best_column_trial: usize,
    /// Empty for boosted CX.
    pub row_errors: Vec<f64>,
    pub best_row_trial: usize,
}

/// Per-matrix state shared by all trials on the same `A` and `k`.
#[derive(Clone, Debug)]
pub struct LowRankProblem {
    a: DenseMatrix,
    svd: TruncatedSvd,
    probs: SubspaceProbs,
    u_eff: DenseMatrix,
    a_k: DenseMatrix,
    norm: f64,
    tail: f64,
}

impl LowRankProblem {
    /// Factor `A` once. A `k` above the effective rank is reduced to it.
    pub fn new(a: &DenseMatrix, k: usize) -> Result<Self> {
        let svd = svd_truncated(a, k, DEFAULT_RANK_TOL)?;
        let probs = column_subspace_probs(&svd)?;
        let keff = svd.effective_rank;
        let u_eff = svd.u_effective();
        let a_k = u_eff
            .scale_cols(&svd.sigma[..keff])
            .matmul(&svd.v_effective().transpose());
        let tail = svd.sigma[keff..].iter().map(|s| s * s).sum::<f64>().sqrt();
        Ok(Self {
            a: a.clone(),
            norm: frobenius_norm(a),
            svd,
            probs,
            u_eff,
            a_k,
            tail,
        })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn svd(&self) -> &TruncatedSvd {
        &self.svd
    }

    /// Column probabilities `‖(V_k)_(i)‖²/k`.
    pub fn column_probs(&self) -> &SubspaceProbs {
        &self.probs
    }

    /// Effective rank parameter.
    pub fn k(&self) -> usize {
        self.svd.effective_rank
    }

    pub fn best_rank_k(&self) -> &DenseMatrix {
        &self.a_k
    }

    /// `‖A − A_k‖_F`.
    pub fn best_rank_k_error(&self) -> f64 {
        self.tail
    }

    fn check_count(c: usize, what: &str) -> Result<()> {
        if c == 0 {
            Err(Error::invalid(format!("{what} must be at least 1")))
        } else {
            Ok(())
        }
    }

    fn cx_from_plan(&self, plan: SamplingPlan) -> Result<CxResult> {
        let c = apply_column_sample(&self.a, &plan)?;
        let cs = svd(&c)?;
        let q = cs.u.leading_columns(cs.rank(DEFAULT_RANK_TOL));
        let proj_a = q.matmul(&q.tr_matmul(&self.a));
        let proj_ak = q.matmul(&q.tr_matmul(&self.a_k));
        let error_frob = frobenius_norm(&self.a.sub(&proj_a));
        let projected_rank_k_error = frobenius_norm(&self.a.sub(&proj_ak));
        let (theta1, zero1) = error_ratio(error_frob, self.tail, self.norm);
        let (theta2, zero2) = error_ratio(projected_rank_k_error, self.tail, self.norm);
        Ok(CxResult {
            plan,
            k: self.k(),
            c,
            error_frob,
            projected_rank_k_error,
            error_rank_k_frob: None,
            best_rank_k_error: self.tail,
            theta1,
            theta2,
            zero_denominator: zero1 || zero2,
        })
    }

    /// Sample `c` columns with subspace probabilities and evaluate `C C⁺ A`.
    pub fn cx(&self, c: usize, method: Method, seed: u64) -> Result<CxResult> {
        Self::check_count(c, "column count c")?;
        let plan = sample(&self.probs, c, method, seed)?;
        self.cx_from_plan(plan)
    }

    /// `A'' = C (P_k C)⁺ P_k A`, the rank-≤k approximation built from `C`.
    pub fn rank_k_approximation(&self, c: &DenseMatrix) -> Result<DenseMatrix> {
        let pk_c = self.u_eff.matmul(&self.u_eff.tr_matmul(c));
        // P_k A = A_k.
        Ok(c.matmul(&pseudoinverse(&pk_c, DEFAULT_RANK_TOL)?.matmul(&self.a_k)))
    }

    /// CX with the rank-restricted error also filled in.
    pub fn cx_rank_k(&self, c: usize, method: Method, seed: u64) -> Result<CxResult> {
        let mut res = self.cx(c, method, seed)?;
        let approx = self.rank_k_approximation(&res.c)?;
        res.error_rank_k_frob = Some(frobenius_norm(&self.a.sub(&approx)));
        Ok(res)
    }

    /// Row stage of CUR for a given column stage.
    pub fn cur_from_cx(&self, cx: CxResult, r: usize, method: Method, seed: u64) -> Result<CurResult> {
        Self::check_count(r, "row count r")?;
        let row_probs = row_subspace_probs(&cx.c)?;
        let row_plan = sample(&row_probs, r, method, seed)?;
        let r_mat = apply_row_sample(&self.a, &row_plan)?;
        let w = apply_row_sample(&cx.c, &row_plan)?;
        let u = pinv_from_svd(&svd(&w)?, DEFAULT_RANK_TOL);
        let approx = cx.c.matmul(&u).matmul(&r_mat);
        let error_frob = frobenius_norm(&self.a.sub(&approx));
        let (theta3, _) = error_ratio(error_frob, self.tail, self.norm);
        Ok(CurResult {
            cx,
            row_plan,
            r: r_mat,
            w,
            u,
            error_frob,
            theta3,
        })
    }

    /// Full CUR: columns drawn with `seed`, rows with a seed derived from it.
    pub fn cur(&self, c: usize, r: usize, method: Method, seed: u64) -> Result<CurResult> {
        let cx = self.cx(c, method, seed)?;
        self.cur_from_cx(cx, r, method, derive_seed(seed, ROW_STAGE))
    }

    /// Best of `⌈ln(1/δ)⌉` independent CX trials by `‖A − CC⁺A‖_F`.
    pub fn boosted_cx(&self, c: usize, method: Method, delta: f64, seed: u64) -> Result<Boosted<CxResult>> {
        let trials = cx_boost_trials(delta)?;
        let results = (0..trials)
            .into_par_iter()
            .map(|t| self.cx(c, method, trial_seed(seed, t)))
            .collect::<Result<Vec<_>>>()?;
        let column_errors: Vec<f64> = results.iter().map(|r| r.error_frob).collect();
        let best_column_trial = argmin(&column_errors);
        let best = results.into_iter().nth(best_column_trial).expect("at least one trial");
        Ok(Boosted {
            best,
            column_errors,
            best_column_trial,
            row_errors: Vec::new(),
            best_row_trial: 0,
        })
    }

    /// Boosted CUR: best `C` of `⌈ln(2/δ)⌉` CX trials, then the best
    /// `(U, R)` of as many row-stage trials on that `C`.
    pub fn boosted_cur(
        &self,
        c: usize,
        r: usize,
        method: Method,
        delta: f64,
        seed: u64,
    ) -> Result<Boosted<CurResult>> {
        let trials = cur_boost_trials(delta)?;
        let columns = (0..trials)
            .into_par_iter()
            .map(|t| self.cx(c, method, trial_seed(seed, t)))
            .collect::<Result<Vec<_>>>()?;
        let column_errors: Vec<f64> = columns.iter().map(|r| r.error_frob).collect();
        let best_column_trial = argmin(&column_errors);
        let best_cx = &columns[best_column_trial];

        let row_seed = derive_seed(seed, ROW_STAGE);
        let rows = (0..trials)
            .into_par_iter()
            .map(|t| self.cur_from_cx(best_cx.clone(), r, method, trial_seed(row_seed, t)))
            .collect::<Result<Vec<_>>>()?;
        let row_errors: Vec<f64> = rows.iter().map(|r| r.error_frob).collect();
        let best_row_trial = argmin(&row_errors);
        let best = rows.into_iter().nth(best_row_trial).expect("at least one trial");
        Ok(Boosted {
            best,
            column_errors,
            best_column_trial,
            row_errors,
            best_row_trial,
        })
    }
}

/// Index of the smallest value; ties go to the lowest index.
fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if v.total_cmp(&values[best]).is_lt() {
            best = i;
        }
    }
    best
}

pub fn cx_decompose(a: &DenseMatrix, k: usize, c: usize, method: Method, seed: u64) -> Result<CxResult> {
    LowRankProblem::new(a, k)?.cx(c, method, seed)
}

pub fn cx_rank_k(a: &DenseMatrix, k: usize, c: usize, method: Method, seed: u64) -> Result<CxResult> {
    LowRankProblem::new(a, k)?.cx_rank_k(c, method, seed)
}

pub fn cur_decompose(
    a: &DenseMatrix,
    k: usize,
    c: usize,
    r: usize,
    method: Method,
    seed: u64,
) -> Result<CurResult> {
    LowRankProblem::new(a, k)?.cur(c, r, method, seed)
}

pub fn boosted_cx(
    a: &DenseMatrix,
    k: usize,
    c: usize,
    method: Method,
    delta: f64,
    seed: u64,
) -> Result<Boosted<CxResult>> {
    LowRankProblem::new(a, k)?.boosted_cx(c, method, delta, seed)
}

pub fn boosted_cur(
    a: &DenseMatrix,
    k: usize,
    c: usize,
    r: usize,
    method: Method,
    delta: f64,
    seed: u64,
) -> Result<Boosted<CurResult>> {
    LowRankProblem::new(a, k)?.boosted_cur(c, r, method, delta, seed)
}
