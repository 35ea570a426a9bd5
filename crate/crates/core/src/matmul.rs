//! Monte-Carlo approximate matrix multiplication `AB ≈ CR`.
//!
//! Columns of `A` and the matching rows of `B` are sampled with one plan, so
//! `C = A S D` and `R = D Sᵀ B` share indices and scales.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{frobenius_norm, DenseMatrix};
use crate::sampling::{apply_column_sample, apply_row_sample, sample, Method, SamplingPlan, SubspaceProbs};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatmulResult {
    pub plan: SamplingPlan,
    /// `m × c′` sampled columns of `A`.
    pub c: DenseMatrix,
    /// `c′ × p` sampled rows of `B`.
    pub r: DenseMatrix,
    /// `C R`.
    pub product: DenseMatrix,
    /// `‖AB − CR‖_F`, present only when the exact product was requested.
    pub abs_error_frob: Option<f64>,
    /// `‖A‖_F ‖B‖_F / √(β c)`, the bound on the expected Frobenius error.
    pub bound: f64,
}

fn check_inner(a: &DenseMatrix, b: &DenseMatrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::mismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

fn normalized(weights: Vec<f64>) -> Result<SubspaceProbs> {
    let n = weights.len();
    let total: f64 = weights.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::invalid(
            "all column/row norm products are zero; no sampling distribution exists",
        ));
    }
    SubspaceProbs::new(weights.into_iter().map(|w| w / total).collect(), n, 1.0)
}

/// `p_i ∝ ‖A^(i)‖ · ‖B_(i)‖`, the variance-optimal choice for `AB`.
pub fn optimal_product_probs(a: &DenseMatrix, b: &DenseMatrix) -> Result<SubspaceProbs> {
    check_inner(a, b)?;
    let weights = a
        .col_norms_sq()
        .into_iter()
        .zip(b.row_norms_sq())
        .map(|(ca, rb)| (ca * rb).sqrt())
        .collect();
    normalized(weights)
}

/// `p_i ∝ ‖A^(i)‖²`, usable when only `A` is cheaply available.
pub fn column_norm_probs(a: &DenseMatrix) -> Result<SubspaceProbs> {
    normalized(a.col_norms_sq())
}

/// Sample `c` column-row pairs and return `C`, `R` and `CR`.
///
/// With `evaluate` set the exact product is also formed to report
/// `‖AB − CR‖_F`; that costs the full multiplication.
pub fn approx_multiply(
    a: &DenseMatrix,
    b: &DenseMatrix,
    c: usize,
    probs: &SubspaceProbs,
    method: Method,
    seed: u64,
    evaluate: bool,
) -> Result<MatmulResult> {
    check_inner(a, b)?;
    if probs.len() != a.cols() {
        return Err(Error::mismatch(format!(
            "probabilities over {} indices for inner dimension {}",
            probs.len(),
            a.cols()
        )));
    }
    let plan = sample(probs, c, method, seed)?;
    let c_mat = apply_column_sample(a, &plan)?;
    let r_mat = apply_row_sample(b, &plan)?;
    let product = c_mat.matmul(&r_mat);
    let abs_error_frob = evaluate.then(|| frobenius_norm(&a.matmul(b).sub(&product)));
    let bound = frobenius_norm(a) * frobenius_norm(b) / (probs.beta() * c as f64).sqrt();
    Ok(MatmulResult {
        plan,
        c: c_mat,
        r: r_mat,
        product,
        abs_error_frob,
        bound,
    })
}
