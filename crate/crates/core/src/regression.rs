//! Sampled generalized least squares `min_X ‖B − A X‖_F`.
//!
//! The constraint rows of `A` and `B` are sampled with probabilities built
//! from the leading left singular vectors of `A`, and the small sampled
//! problem `D Sᵀ A X ≈ D Sᵀ B` is solved exactly with a pseudoinverse.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    frobenius_norm, numerical_rank, pseudoinverse, rank, svd_truncated, DenseMatrix, TruncatedSvd,
    DEFAULT_RANK_TOL,
};
use crate::sampling::{apply_row_sample, sample, Method, SamplingPlan, SubspaceProbs};

/// Constant in the worst-case row count `r = 3200 k² / (β ε²)`.
pub const WORST_CASE_CONSTANT: f64 = 3200.0;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegressionSolution {
    /// `n × p` coefficients.
    pub x: DenseMatrix,
    /// `‖B − A X‖_F` on the original problem.
    pub residual_frob: f64,
    /// `‖D Sᵀ B − D Sᵀ A X‖_F` on the sampled problem (absent for the exact solve).
    pub sampled_residual_frob: Option<f64>,
    pub plan: Option<SamplingPlan>,
    /// `rank(D Sᵀ U_k)`; below `k` means the sample lost part of the subspace.
    pub sampled_rank: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegressionDiagnostics {
    /// `‖U_k U_kᵀ B‖_F / ‖B‖_F`.
    pub gamma: f64,
    /// Set when `B = 0`; `gamma` is then reported as 1.
    pub gamma_undefined: bool,
    /// `σ_max(A_k) / σ_min(A_k)`.
    pub kappa: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    /// Optimal residual of the original problem.
    pub z_opt: f64,
    pub x_opt_frob: f64,
    /// `‖X_opt − X̃‖_F` for the solution being diagnosed.
    pub coefficient_error: f64,
    pub epsilon: f64,
    /// `ε 𝒵 / σ_min(A_k)`.
    pub bound_result3: f64,
    /// `ε κ(A_k) √(γ⁻² − 1) ‖X_opt‖_F`.
    pub bound_result4: f64,
}

fn check_rows(a: &DenseMatrix, b: &DenseMatrix) -> Result<()> {
    if a.rows() != b.rows() {
        return Err(Error::mismatch(format!(
            "A has {} rows but B has {}",
            a.rows(),
            b.rows()
        )));
    }
    Ok(())
}

/// Minimum-norm least-squares solution `X = A⁺ B`.
pub fn exact_regression(a: &DenseMatrix, b: &DenseMatrix) -> Result<RegressionSolution> {
    check_rows(a, b)?;
    b.ensure_finite("right-hand side")?;
    let x = pseudoinverse(a, DEFAULT_RANK_TOL)?.matmul(b);
    let residual_frob = frobenius_norm(&b.sub(&a.matmul(&x)));
    Ok(RegressionSolution {
        x,
        residual_frob,
        sampled_residual_frob: None,
        plan: None,
        sampled_rank: None,
    })
}

/// Row probabilities `p_i = ‖(U_k)_(i)‖² / k` for the constraints of `A`.
///
/// Returns the truncated SVD alongside so callers can reuse `U_k`.
pub fn regression_row_probs(a: &DenseMatrix, k: usize) -> Result<(SubspaceProbs, TruncatedSvd)> {
    let t = svd_truncated(a, k, DEFAULT_RANK_TOL)?;
    if t.effective_rank == 0 {
        return Err(Error::invalid("regression matrix is numerically zero"));
    }
    if numerical_rank(&t.sigma, DEFAULT_RANK_TOL) > k {
        log::warn!(
            "regression matrix has numerical rank {} > k = {k}; guarantees assume rank ≤ k",
            numerical_rank(&t.sigma, DEFAULT_RANK_TOL)
        );
    }
    let u = t.u_effective();
    let keff = u.cols();
    let probs = u.row_norms_sq().into_iter().map(|l| l / keff as f64).collect();
    Ok((SubspaceProbs::new(probs, keff, 1.0)?, t))
}

fn solve_sampled(
    a: &DenseMatrix,
    b: &DenseMatrix,
    plan: SamplingPlan,
    basis: Option<&DenseMatrix>,
) -> Result<RegressionSolution> {
    let sa = apply_row_sample(a, &plan)?;
    let sb = apply_row_sample(b, &plan)?;
    let x = pseudoinverse(&sa, DEFAULT_RANK_TOL)?.matmul(&sb);
    let sampled_residual_frob = frobenius_norm(&sb.sub(&sa.matmul(&x)));
    let residual_frob = frobenius_norm(&b.sub(&a.matmul(&x)));
    let sampled_rank = match basis {
        Some(u) => {
            let r = rank(&apply_row_sample(u, &plan)?, DEFAULT_RANK_TOL)?;
            if r < u.cols() {
                log::warn!("sampled subspace collapsed to rank {r} of {}", u.cols());
            }
            Some(r)
        }
        None => None,
    };
    Ok(RegressionSolution {
        x,
        residual_frob,
        sampled_residual_frob: Some(sampled_residual_frob),
        plan: Some(plan),
        sampled_rank,
    })
}

/// Sampled regression with leverage-score probabilities from `U_{A,k}`.
///
/// Rank collapse of the sampled basis is not an error; it shows up in
/// [`RegressionSolution::sampled_rank`] and in the residual.
pub fn sampled_regression(
    a: &DenseMatrix,
    b: &DenseMatrix,
    k: usize,
    r: usize,
    method: Method,
    seed: u64,
) -> Result<RegressionSolution> {
    check_rows(a, b)?;
    if r == 0 {
        return Err(Error::invalid("row sample size r must be at least 1"));
    }
    let (probs, t) = regression_row_probs(a, k)?;
    let plan = sample(&probs, r, method, seed)?;
    solve_sampled(a, b, plan, Some(&t.u_effective()))
}

/// Sampled regression with caller-supplied row probabilities.
pub fn sampled_regression_with_probs(
    a: &DenseMatrix,
    b: &DenseMatrix,
    probs: &SubspaceProbs,
    r: usize,
    method: Method,
    seed: u64,
) -> Result<RegressionSolution> {
    check_rows(a, b)?;
    if probs.len() != a.rows() {
        return Err(Error::mismatch(format!(
            "probabilities over {} rows for a matrix with {}",
            probs.len(),
            a.rows()
        )));
    }
    if r == 0 {
        return Err(Error::invalid("row sample size r must be at least 1"));
    }
    let plan = sample(probs, r, method, seed)?;
    solve_sampled(a, b, plan, None)
}

/// Worst-case row count `3200 k² / (β ε²)` for a `(1+ε)` residual.
pub fn rows_for_regression(k: usize, beta: f64, epsilon: f64) -> f64 {
    WORST_CASE_CONSTANT * (k * k) as f64 / (beta * epsilon * epsilon)
}

/// The `ε` implied by `r` rows, inverting [`rows_for_regression`].
pub fn epsilon_for_rows(k: usize, beta: f64, r: usize) -> f64 {
    (WORST_CASE_CONSTANT * (k * k) as f64 / (beta * r as f64)).sqrt()
}

/// Conditioning quantities and the two coefficient-error bounds for a
/// sampled solution, evaluated against the exact oracle.
pub fn diagnostics(
    a: &DenseMatrix,
    b: &DenseMatrix,
    k: usize,
    solution: &RegressionSolution,
    epsilon: f64,
) -> Result<RegressionDiagnostics> {
    check_rows(a, b)?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::invalid(format!("epsilon {epsilon} must be positive")));
    }
    let t = svd_truncated(a, k, DEFAULT_RANK_TOL)?;
    let keff = t.effective_rank;
    if keff == 0 {
        return Err(Error::invalid("regression matrix is numerically zero"));
    }
    let sigma_max = t.sigma[0];
    let sigma_min = t.sigma[keff - 1];
    let kappa = sigma_max / sigma_min;

    let u = t.u_effective();
    let in_span = u.matmul(&u.tr_matmul(b));
    let b_norm = frobenius_norm(b);
    let in_norm = frobenius_norm(&in_span);
    let out_norm = frobenius_norm(&b.sub(&in_span));
    let gamma_undefined = b_norm == 0.0;
    let gamma = if gamma_undefined { 1.0 } else { (in_norm / b_norm).min(1.0) };
    // γ⁻² − 1 = ‖(I − P)B‖² / ‖PB‖², which avoids cancellation when γ ≈ 1.
    let gamma_term = if gamma_undefined || out_norm == 0.0 {
        0.0
    } else if in_norm == 0.0 {
        f64::INFINITY
    } else {
        out_norm / in_norm
    };

    let exact = exact_regression(a, b)?;
    if solution.x.shape() != exact.x.shape() {
        return Err(Error::mismatch("solution has the wrong shape for this problem"));
    }
    let x_opt_frob = frobenius_norm(&exact.x);
    let z_opt = exact.residual_frob;
    Ok(RegressionDiagnostics {
        gamma,
        gamma_undefined,
        kappa,
        sigma_min,
        sigma_max,
        z_opt,
        x_opt_frob,
        coefficient_error: frobenius_norm(&exact.x.sub(&solution.x)),
        epsilon,
        bound_result3: epsilon * z_opt / sigma_min,
        bound_result4: epsilon * kappa * gamma_term * x_opt_frob,
    })
}
