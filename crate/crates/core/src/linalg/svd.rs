//! Dense singular value decomposition by one-sided (Hestenes) Jacobi.
//!
//! Column pairs of a working copy of `A` are rotated until every pair is
//! orthogonal to within a relative tolerance; the column norms are then the
//! singular values and the accumulated rotations form `V`. The method is
//! slow compared with bidiagonalization for large inputs but computes small
//! singular values to high relative accuracy, which matters for the
//! rank-deficient matrices that sampling produces.

use serde::{Deserialize, Serialize};

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Thin SVD `A = U diag(sigma) Vᵀ` with `p = min(m, n)` triplets.
#[derive(Clone, Debug)]
pub struct Svd {
    /// `m × p`, orthonormal columns.
    pub u: DenseMatrix,
    /// Nonincreasing, nonnegative.
    pub sigma: Vec<f64>,
    /// `n × p`, orthonormal columns.
    pub v: DenseMatrix,
}

impl Svd {
    /// Number of singular values strictly above `tol * sigma[0]`.
    pub fn rank(&self, tol: f64) -> usize {
        numerical_rank(&self.sigma, tol)
    }

    /// `U diag(sigma) Vᵀ` using the leading `k` triplets.
    pub fn reconstruct(&self, k: usize) -> DenseMatrix {
        let k = k.min(self.sigma.len());
        let us = self.u.leading_columns(k).scale_cols(&self.sigma[..k]);
        us.matmul(&self.v.leading_columns(k).transpose())
    }
}

pub(crate) fn numerical_rank(sigma: &[f64], tol: f64) -> usize {
    let Some(&top) = sigma.first() else { return 0 };
    let cutoff = tol * top;
    sigma.iter().take_while(|&&s| s > cutoff && s > 0.0).count()
}

/// Full thin SVD of `a`.
pub fn svd(a: &DenseMatrix) -> Result<Svd> {
    a.ensure_finite("svd input")?;
    if a.rows() >= a.cols() {
        jacobi(a)
    } else {
        let Svd { u, sigma, v } = jacobi(&a.transpose())?;
        Ok(Svd { u: v, sigma, v: u })
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn rotate(x: &mut [f64], y: &mut [f64], c: f64, s: f64) {
    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
        let (p, q) = (*xi, *yi);
        *xi = c * p - s * q;
        *yi = s * p + c * q;
    }
}

/// One-sided Jacobi for `rows >= cols`.
fn jacobi(a: &DenseMatrix) -> Result<Svd> {
    let (m, n) = a.shape();
    debug_assert!(m >= n);

    let scale = a.max_abs();
    if scale == 0.0 {
        return Ok(Svd {
            u: complete_orthonormal(vec![vec![0.0; m]; n], m),
            sigma: vec![0.0; n],
            v: DenseMatrix::identity(n),
        });
    }

    let mut w: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..m).map(|i| a[(i, j)] / scale).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let tol = f64::EPSILON * (m as f64);
    // Columns below this squared norm are rounding noise of a rank-deficient
    // input; rotating them never settles and cannot change the result.
    let total: f64 = w.iter().map(|col| dot(col, col)).sum();
    let negligible = tol * tol * total;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n.saturating_sub(1) {
            for j in (i + 1)..n {
                let alpha = dot(&w[i], &w[i]);
                let beta = dot(&w[j], &w[j]);
                let gamma = dot(&w[i], &w[j]);
                if gamma == 0.0
                    || alpha <= negligible
                    || beta <= negligible
                    || gamma.abs() <= tol * (alpha * beta).sqrt()
                {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;

                let (head, tail) = w.split_at_mut(j);
                rotate(&mut head[i], &mut tail[0], c, s);
                let (head, tail) = v.split_at_mut(j);
                rotate(&mut head[i], &mut tail[0], c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Jacobi SVD did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let norms: Vec<f64> = w.iter().map(|col| dot(col, col).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]).then(x.cmp(&y)));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j] * scale).collect();
    let u_cols: Vec<Vec<f64>> = order
        .iter()
        .map(|&j| {
            let nrm = norms[j];
            if nrm > 0.0 {
                w[j].iter().map(|x| x / nrm).collect()
            } else {
                vec![0.0; m]
            }
        })
        .collect();
    let v_cols: Vec<Vec<f64>> = order.iter().map(|&j| v[j].clone()).collect();

    if sigma.iter().any(|s| !s.is_finite()) {
        return Err(Error::Numerical("non-finite singular value".into()));
    }

    Ok(Svd {
        u: complete_orthonormal(u_cols, m),
        sigma,
        v: DenseMatrix::from_columns(&v_cols),
    })
}

/// Re-orthonormalize columns in order with modified Gram-Schmidt, replacing
/// any column that is (numerically) dependent on its predecessors by a
/// standard basis vector orthogonalized against them.
fn complete_orthonormal(mut cols: Vec<Vec<f64>>, m: usize) -> DenseMatrix {
    for j in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(j);
        let col = &mut rest[0];
        for q in done.iter() {
            let d = dot(q, col);
            col.iter_mut().zip(q).for_each(|(c, qi)| *c -= d * qi);
        }
        let nrm = dot(col, col).sqrt();
        if nrm > 0.5 {
            col.iter_mut().for_each(|c| *c /= nrm);
            continue;
        }
        // Dependent or zero column: pick the basis vector with the largest
        // residual against the columns already fixed.
        let mut best: Option<(f64, Vec<f64>)> = None;
        for e in 0..m {
            let mut cand = vec![0.0; m];
            cand[e] = 1.0;
            for _ in 0..2 {
                for q in done.iter() {
                    let d = dot(q, &cand);
                    cand.iter_mut().zip(q).for_each(|(c, qi)| *c -= d * qi);
                }
            }
            let r = dot(&cand, &cand).sqrt();
            if best.as_ref().map_or(true, |(br, _)| r > *br) {
                best = Some((r, cand));
            }
        }
        let (r, cand) = best.expect("m >= 1");
        *col = cand.into_iter().map(|c| c / r).collect();
    }
    DenseMatrix::from_columns(&cols)
}

/// Rank-`k` truncation of the SVD together with the full spectrum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TruncatedSvd {
    /// Requested rank.
    pub k: usize,
    /// Leading singular values above `tol * sigma[0]`, capped at `k`.
    pub effective_rank: usize,
    /// `m × k`.
    pub u_k: DenseMatrix,
    /// All `min(m, n)` singular values.
    pub sigma: Vec<f64>,
    /// `n × k`.
    pub v_k: DenseMatrix,
    pub tol: f64,
}

impl TruncatedSvd {
    /// `‖A − A_k‖_F`, from the tail of the spectrum.
    pub fn tail_error(&self) -> f64 {
        self.sigma[self.k..].iter().map(|s| s * s).sum::<f64>().sqrt()
    }

    /// `A_k = U_k Σ_k V_kᵀ`.
    pub fn low_rank(&self) -> DenseMatrix {
        self.u_k
            .scale_cols(&self.sigma[..self.k])
            .matmul(&self.v_k.transpose())
    }

    /// Leading `effective_rank` columns of `U_k`.
    pub fn u_effective(&self) -> DenseMatrix {
        self.u_k.leading_columns(self.effective_rank)
    }

    /// Leading `effective_rank` columns of `V_k`.
    pub fn v_effective(&self) -> DenseMatrix {
        self.v_k.leading_columns(self.effective_rank)
    }
}

/// Rank-`k` SVD of `a`; singular values at or below `tol * σ_1` do not
/// count towards the effective rank.
pub fn svd_truncated(a: &DenseMatrix, k: usize, tol: f64) -> Result<TruncatedSvd> {
    let p = a.rows().min(a.cols());
    if k == 0 || k > p {
        return Err(Error::invalid(format!(
            "rank parameter k={k} must lie in 1..={p}"
        )));
    }
    if !(0.0..1.0).contains(&tol) {
        return Err(Error::invalid(format!("tolerance {tol} must lie in [0, 1)")));
    }
    let full = svd(a)?;
    let effective_rank = full.rank(tol).min(k);
    Ok(TruncatedSvd {
        k,
        effective_rank,
        u_k: full.u.leading_columns(k),
        v_k: full.v.leading_columns(k),
        sigma: full.sigma,
        tol,
    })
}

pub fn frobenius_norm(a: &DenseMatrix) -> f64 {
    a.frobenius_norm_sq().sqrt()
}

/// Largest singular value.
pub fn spectral_norm(a: &DenseMatrix) -> Result<f64> {
    Ok(svd(a)?.sigma[0])
}
