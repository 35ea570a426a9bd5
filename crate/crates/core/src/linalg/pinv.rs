use super::matrix::DenseMatrix;
use super::svd::{svd, Svd};
use crate::error::{Error, Result};

/// Default relative cutoff below which singular values are treated as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-12;

fn check_tol(tol: f64) -> Result<()> {
    if (0.0..1.0).contains(&tol) {
        Ok(())
    } else {
        Err(Error::invalid(format!("tolerance {tol} must lie in [0, 1)")))
    }
}

/// `V Σ⁺ Uᵀ` for an already computed SVD.
pub fn pinv_from_svd(s: &Svd, tol: f64) -> DenseMatrix {
    let r = s.rank(tol);
    let inv: Vec<f64> = s.sigma[..r].iter().map(|x| 1.0 / x).collect();
    s.v.leading_columns(r)
        .scale_cols(&inv)
        .matmul(&s.u.leading_columns(r).transpose())
}

/// Moore-Penrose pseudoinverse; singular values `≤ tol·σ_1` are dropped.
pub fn pseudoinverse(a: &DenseMatrix, tol: f64) -> Result<DenseMatrix> {
    check_tol(tol)?;
    Ok(pinv_from_svd(&svd(a)?, tol))
}

/// Numerical rank at relative cutoff `tol`.
pub fn rank(a: &DenseMatrix, tol: f64) -> Result<usize> {
    check_tol(tol)?;
    Ok(svd(a)?.rank(tol))
}

/// `{D1, D2}`-weighted generalized inverse
/// `D2^{-1/2} (D1^{1/2} A D2^{-1/2})⁺ D1^{1/2}` for positive diagonal weights.
pub fn weighted_pseudoinverse(a: &DenseMatrix, d1: &[f64], d2: &[f64]) -> Result<DenseMatrix> {
    if d1.len() != a.rows() || d2.len() != a.cols() {
        return Err(Error::mismatch(format!(
            "weights of length {} and {} for a {}x{} matrix",
            d1.len(),
            d2.len(),
            a.rows(),
            a.cols()
        )));
    }
    if let Some(bad) = d1.iter().chain(d2).find(|&&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::invalid(format!("weight {bad} is not strictly positive")));
    }
    let d1_half: Vec<f64> = d1.iter().map(|w| w.sqrt()).collect();
    let d2_inv_half: Vec<f64> = d2.iter().map(|w| 1.0 / w.sqrt()).collect();
    let weighted = a.scale_rows(&d1_half).scale_cols(&d2_inv_half);
    let inner = pseudoinverse(&weighted, DEFAULT_RANK_TOL)?;
    Ok(inner.scale_rows(&d2_inv_half).scale_cols(&d1_half))
}

/// `C C⁺ A`, the projection of the columns of `A` onto `span(C)`.
pub fn project_onto_span(c: &DenseMatrix, a: &DenseMatrix) -> Result<DenseMatrix> {
    if c.rows() != a.rows() {
        return Err(Error::mismatch(format!(
            "projection basis has {} rows, target has {}",
            c.rows(),
            a.rows()
        )));
    }
    a.ensure_finite("projection target")?;
    let s = svd(c)?;
    // C C⁺ = U_r U_rᵀ, applied without forming the m×m projector.
    let q = s.u.leading_columns(s.rank(DEFAULT_RANK_TOL));
    Ok(q.matmul(&q.tr_matmul(a)))
}
