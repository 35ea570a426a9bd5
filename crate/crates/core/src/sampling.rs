//! Subspace-sampling probabilities and the two randomized samplers.
//!
//! A [`SamplingPlan`] is the pair `(S, D)` stored sparsely: the chosen
//! indices (the nonzero pattern of the sampling matrix `S`) and the positive
//! rescaling factors on the diagonal of `D`. Applying a plan to the columns
//! of `A` yields `A S D`; applying it to the rows yields `D Sᵀ A`.

use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{svd, DenseMatrix, TruncatedSvd, DEFAULT_RANK_TOL};
use crate::rng::stream_rng;

/// Attempts made by [`sample_expected`] before reporting an empty sample.
pub const EXPECTED_MAX_ATTEMPTS: u32 = 16;

const SUM_TOL: f64 = 1e-10;

/// How indices are drawn from a probability vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// `c` i.i.d. draws with replacement, scale `1/√(c·p_i)`.
    Exactly,
    /// Independent inclusion with probability `min{1, c·p_j}`, scale
    /// `1/min{1, √(c·p_j)}`.
    Expected,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exactly => "exactly",
            Method::Expected => "expected",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exactly" => Ok(Method::Exactly),
            "expected" => Ok(Method::Expected),
            other => Err(Error::invalid(format!(
                "unknown sampling method {other:?} (expected \"exactly\" or \"expected\")"
            ))),
        }
    }
}

/// A probability distribution over columns or rows, tagged with the rank
/// parameter it was built for and its quality factor `β`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceProbs {
    probs: Vec<f64>,
    k: usize,
    beta: f64,
}

impl SubspaceProbs {
    /// Validates nonnegativity, normalization (to 1e-10) and `β ∈ (0, 1]`.
    pub fn new(probs: Vec<f64>, k: usize, beta: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::invalid("empty probability vector"));
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::invalid(format!("probability {p} is not a finite nonnegative number")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::invalid(format!("probabilities sum to {total}, not 1")));
        }
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::invalid(format!("beta {beta} must lie in (0, 1]")));
        }
        Ok(Self { probs, k, beta })
    }

    /// Uniform distribution over `n` items.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("uniform distribution over zero items"));
        }
        Self::new(vec![1.0 / n as f64; n], n, 1.0)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Whether `p_i ≥ (β/k)·‖basis_(i)‖² − slack` for every row `i` of `basis`.
    pub fn satisfies_leverage_bound(&self, basis: &DenseMatrix, slack: f64) -> bool {
        basis.rows() == self.probs.len()
            && basis
                .row_norms_sq()
                .iter()
                .zip(&self.probs)
                .all(|(lev, p)| *p >= self.beta / self.k as f64 * lev - slack)
    }

    /// Expected plan size under Expected(c): `Σ min{1, c·p_j}`.
    pub fn expected_sample_size(&self, c: usize) -> f64 {
        self.probs.iter().map(|p| (c as f64 * p).min(1.0)).sum()
    }
}

/// Normalized squared row norms of an orthonormal-column basis.
fn leverage_probs(basis: &DenseMatrix) -> Result<SubspaceProbs> {
    let k = basis.cols();
    let probs = basis
        .row_norms_sq()
        .into_iter()
        .map(|l| l / k as f64)
        .collect();
    SubspaceProbs::new(probs, k, 1.0)
}

/// Column probabilities `p_i = ‖(V_k)_(i)‖² / k` from a truncated SVD.
///
/// When the effective rank is below `k`, only the singular vectors with
/// nonnegligible singular values are used and `k` is reset to the effective
/// rank.
pub fn column_subspace_probs(svd: &TruncatedSvd) -> Result<SubspaceProbs> {
    if svd.effective_rank == 0 {
        return Err(Error::invalid(
            "matrix is numerically zero: no leverage distribution exists",
        ));
    }
    if svd.effective_rank < svd.k {
        log::warn!(
            "rank parameter {} exceeds effective rank {}; using the effective rank",
            svd.k,
            svd.effective_rank
        );
    }
    leverage_probs(&svd.v_effective())
}

/// Row probabilities `p_i = ‖(U_C)_(i)‖² / rank(C)` over the rows of `C`,
/// with `U_C` the left singular vectors of `C` for its nonzero singular
/// values.
pub fn row_subspace_probs(c: &DenseMatrix) -> Result<SubspaceProbs> {
    let s = svd(c)?;
    let r = s.rank(DEFAULT_RANK_TOL);
    if r == 0 {
        return Err(Error::invalid(
            "matrix is numerically zero: no leverage distribution exists",
        ));
    }
    leverage_probs(&s.u.leading_columns(r))
}

/// A realized `(S, D)` pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub method: Method,
    pub seed: u64,
    /// Number of candidate columns or rows.
    pub source_dim: usize,
    pub c_requested: usize,
    pub indices: Vec<usize>,
    pub scales: Vec<f64>,
    /// Which Expected(c) attempt produced this plan (0 for Exactly).
    #[serde(default)]
    pub attempt: u32,
}

impl SamplingPlan {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    fn check(&self, dim: usize, what: &str) -> Result<()> {
        if self.source_dim != dim {
            return Err(Error::mismatch(format!(
                "plan samples from {} {what}, matrix has {dim}",
                self.source_dim
            )));
        }
        if self.indices.len() != self.scales.len() {
            return Err(Error::invalid("plan has different numbers of indices and scales"));
        }
        if self.indices.is_empty() {
            return Err(Error::invalid("plan selects nothing"));
        }
        if let Some(i) = self.indices.iter().find(|&&i| i >= dim) {
            return Err(Error::invalid(format!("plan index {i} out of range for {dim} {what}")));
        }
        Ok(())
    }
}

fn check_count(c: usize) -> Result<()> {
    if c == 0 {
        Err(Error::invalid("sample size must be at least 1"))
    } else {
        Ok(())
    }
}

/// Exactly(c): `c` i.i.d. draws from `probs`.
pub fn sample_exactly(probs: &SubspaceProbs, c: usize, seed: u64) -> Result<SamplingPlan> {
    check_count(c)?;
    // Zero-probability entries stay out of the table so every scale is finite.
    let support: Vec<usize> = (0..probs.len()).filter(|&i| probs.probs[i] > 0.0).collect();
    let dist = WeightedIndex::new(support.iter().map(|&i| probs.probs[i]))
        .map_err(|e| Error::invalid(format!("cannot sample from probabilities: {e}")))?;
    let mut rng = stream_rng(seed, 0);
    let cf = c as f64;
    let (indices, scales) = (0..c)
        .map(|_| {
            let i = support[dist.sample(&mut rng)];
            (i, 1.0 / (cf * probs.probs[i]).sqrt())
        })
        .unzip();
    Ok(SamplingPlan {
        method: Method::Exactly,
        seed,
        source_dim: probs.len(),
        c_requested: c,
        indices,
        scales,
        attempt: 0,
    })
}

fn expected_attempt(probs: &SubspaceProbs, c: usize, seed: u64, attempt: u32) -> SamplingPlan {
    let mut rng = stream_rng(seed, u64::from(attempt));
    let cf = c as f64;
    let mut indices = Vec::new();
    let mut scales = Vec::new();
    for (j, &p) in probs.probs.iter().enumerate() {
        // One uniform per candidate keeps the stream layout independent of outcomes.
        let u: f64 = rng.random();
        let keep = (cf * p).min(1.0);
        if p > 0.0 && u < keep {
            indices.push(j);
            scales.push(1.0 / (cf * p).sqrt().min(1.0));
        }
    }
    SamplingPlan {
        method: Method::Expected,
        seed,
        source_dim: probs.len(),
        c_requested: c,
        indices,
        scales,
        attempt,
    }
}

pub(crate) fn sample_expected_with_attempts(
    probs: &SubspaceProbs,
    c: usize,
    seed: u64,
    max_attempts: u32,
) -> Result<SamplingPlan> {
    check_count(c)?;
    for attempt in 0..max_attempts {
        let plan = expected_attempt(probs, c, seed, attempt);
        if !plan.is_empty() {
            return Ok(plan);
        }
        log::debug!("Expected({c}) attempt {attempt} selected nothing; retrying");
    }
    Err(Error::EmptySample { attempts: max_attempts })
}

/// Expected(c): include index `j` independently with probability
/// `min{1, c·p_j}`. An empty outcome is redrawn on a fresh stream, up to
/// [`EXPECTED_MAX_ATTEMPTS`] times.
pub fn sample_expected(probs: &SubspaceProbs, c: usize, seed: u64) -> Result<SamplingPlan> {
    sample_expected_with_attempts(probs, c, seed, EXPECTED_MAX_ATTEMPTS)
}

pub fn sample(probs: &SubspaceProbs, c: usize, method: Method, seed: u64) -> Result<SamplingPlan> {
    match method {
        Method::Exactly => sample_exactly(probs, c, seed),
        Method::Expected => sample_expected(probs, c, seed),
    }
}

/// `A S D`: column `t` is `scales[t] · A^(indices[t])`.
pub fn apply_column_sample(a: &DenseMatrix, plan: &SamplingPlan) -> Result<DenseMatrix> {
    plan.check(a.cols(), "columns")?;
    Ok(DenseMatrix::from_fn(a.rows(), plan.len(), |i, t| {
        plan.scales[t] * a[(i, plan.indices[t])]
    }))
}

/// `D Sᵀ A`: row `t` is `scales[t] · A_(indices[t])`.
pub fn apply_row_sample(a: &DenseMatrix, plan: &SamplingPlan) -> Result<DenseMatrix> {
    plan.check(a.rows(), "rows")?;
    Ok(DenseMatrix::from_fn(plan.len(), a.cols(), |t, j| {
        plan.scales[t] * a[(plan.indices[t], j)]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::svd_truncated;

    fn probs(p: &[f64]) -> SubspaceProbs {
        SubspaceProbs::new(p.to_vec(), 1, 1.0).unwrap()
    }

    #[test]
    fn identity_and_single_direction_leverage() {
        let t = svd_truncated(&DenseMatrix::identity(2), 2, 1e-12).unwrap();
        let p = column_subspace_probs(&t).unwrap();
        assert!((p.probs()[0] - 0.5).abs() < 1e-15 && (p.probs()[1] - 0.5).abs() < 1e-15);

        let t = svd_truncated(&DenseMatrix::from_diag(&[5.0, 0.0]), 1, 1e-12).unwrap();
        let p = column_subspace_probs(&t).unwrap();
        assert!((p.probs()[0] - 1.0).abs() < 1e-15 && p.probs()[1].abs() < 1e-15);
    }

    #[test]
    fn degenerate_rank_resets_k() {
        let t = svd_truncated(&DenseMatrix::from_diag(&[5.0, 0.0]), 2, 1e-12).unwrap();
        assert_eq!(t.effective_rank, 1);
        let p = column_subspace_probs(&t).unwrap();
        assert_eq!(p.k(), 1);
        assert!((p.probs()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix_has_no_distribution() {
        let t = svd_truncated(&DenseMatrix::zeros(3, 2), 1, 1e-12).unwrap();
        assert!(column_subspace_probs(&t).is_err());
        assert!(row_subspace_probs(&DenseMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn row_probs_small_cases() {
        let e1 = DenseMatrix::from_rows(&[[1.0], [0.0], [0.0]]).unwrap();
        let p = row_subspace_probs(&e1).unwrap();
        assert_eq!(p.k(), 1);
        assert!((p.probs()[0] - 1.0).abs() < 1e-15);
        let p = row_subspace_probs(&DenseMatrix::identity(2)).unwrap();
        assert!((p.probs()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn probs_validation() {
        assert!(SubspaceProbs::new(vec![0.5, 0.6], 1, 1.0).is_err());
        assert!(SubspaceProbs::new(vec![1.5, -0.5], 1, 1.0).is_err());
        assert!(SubspaceProbs::new(vec![1.0], 1, 0.0).is_err());
        assert!(SubspaceProbs::new(vec![], 1, 1.0).is_err());
    }

    #[test]
    fn exactly_degenerate_distribution() {
        let plan = sample_exactly(&probs(&[1.0, 0.0]), 3, 9).unwrap();
        assert_eq!(plan.indices, vec![0, 0, 0]);
        for s in &plan.scales {
            assert!((s - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn exactly_scale_formula() {
        let plan = sample_exactly(&probs(&[0.5, 0.5]), 2, 1).unwrap();
        assert!(plan.scales.iter().all(|&s| (s - 1.0).abs() < 1e-15));
        assert!(sample_exactly(&probs(&[0.5, 0.5]), 0, 1).is_err());
    }

    #[test]
    fn expected_forced_and_saturated() {
        let plan = sample_expected(&probs(&[1.0, 0.0]), 1, 3).unwrap();
        assert_eq!(plan.indices, vec![0]);
        assert_eq!(plan.scales, vec![1.0]);

        let plan = sample_expected(&SubspaceProbs::uniform(4).unwrap(), 8, 3).unwrap();
        assert_eq!(plan.indices, vec![0, 1, 2, 3]);
        assert!(plan.scales.iter().all(|&s| s == 1.0));
    }

    #[test]
    fn expected_retries_then_reports_exhaustion() {
        let p = SubspaceProbs::uniform(1000).unwrap();
        // c·p = 0.001 per index: an attempt is empty with probability ≈ e⁻¹.
        let seed = (0..200u64)
            .find(|&s| expected_attempt(&p, 1, s, 0).is_empty())
            .expect("some seed gives an empty first attempt");
        assert!(matches!(
            sample_expected_with_attempts(&p, 1, seed, 1),
            Err(Error::EmptySample { attempts: 1 })
        ));
        let plan = sample_expected(&p, 1, seed).unwrap();
        assert!(plan.attempt >= 1 && !plan.is_empty());
        assert!(Error::EmptySample { attempts: 1 }.is_retryable());
    }

    #[test]
    fn apply_small_plans() {
        let plan = SamplingPlan {
            method: Method::Exactly,
            seed: 0,
            source_dim: 2,
            c_requested: 1,
            indices: vec![1],
            scales: vec![2.0],
            attempt: 0,
        };
        let c = apply_column_sample(&DenseMatrix::identity(2), &plan).unwrap();
        assert_eq!(c, DenseMatrix::from_rows(&[[0.0], [2.0]]).unwrap());
        let r = apply_row_sample(&DenseMatrix::identity(2), &plan).unwrap();
        assert_eq!(r, DenseMatrix::from_rows(&[[0.0, 2.0]]).unwrap());
        assert!(apply_column_sample(&DenseMatrix::identity(3), &plan).is_err());

        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let full = sample_expected(&SubspaceProbs::uniform(2).unwrap(), 2, 0).unwrap();
        assert_eq!(apply_column_sample(&a, &full).unwrap(), a);
        assert_eq!(apply_row_sample(&a, &full).unwrap(), a);
    }

    #[test]
    fn method_parsing() {
        assert_eq!("Exactly".parse::<Method>().unwrap(), Method::Exactly);
        assert_eq!("expected".parse::<Method>().unwrap(), Method::Expected);
        assert!("uniform".parse::<Method>().is_err());
        assert_eq!(Method::Expected.to_string(), "expected");
    }

    #[test]
    fn plan_json_has_reproducibility_fields() {
        let plan = sample_exactly(&probs(&[0.25, 0.75]), 4, 11).unwrap();
        let v: serde_json::Value = serde_json::to_value(&plan).unwrap();
        for key in ["method", "seed", "indices", "scales"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["method"], "exactly");
        let back: SamplingPlan = serde_json::from_value(v).unwrap();
        assert_eq!(back, plan);
    }
}
