#![allow(dead_code)]

use nalgebra::DMatrix;
use relcur::linalg::frobenius_norm;
use relcur::synth::{gaussian, synth, Spectrum, SynthSpec};
use relcur::DenseMatrix;

pub fn to_na(a: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.rows(), a.cols(), a.as_slice())
}

pub fn from_na(a: &DMatrix<f64>) -> DenseMatrix {
    DenseMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

/// Singular values from nalgebra's bidiagonal QR SVD, sorted descending.
pub fn oracle_singular_values(a: &DenseMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = to_na(a).singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Exact rank-`k` product of two Gaussian factors.
pub fn random_rank_k(m: usize, n: usize, k: usize, seed: u64) -> DenseMatrix {
    gaussian(m, k, seed).matmul(&gaussian(k, n, seed.wrapping_add(0x9e37)))
}

/// Flat rank-`rank` matrix plus Gaussian noise of Frobenius norm about `noise`.
pub fn noisy_low_rank(m: usize, n: usize, rank: usize, noise: f64, seed: u64) -> DenseMatrix {
    synth(&SynthSpec {
        rows: m,
        cols: n,
        target_rank: rank,
        spectrum: Spectrum::Flat,
        noise_level: noise,
        seed,
    })
    .unwrap()
}

pub fn rel_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    frobenius_norm(&a.sub(b)) / frobenius_norm(b).max(f64::MIN_POSITIVE)
}
