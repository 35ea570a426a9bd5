//! Dense linear algebra: storage, SVD, pseudoinverses, norms and projections.

mod matrix;
mod pinv;
mod svd;

pub use matrix::DenseMatrix;
pub use pinv::{
    pinv_from_svd, project_onto_span, pseudoinverse, rank, weighted_pseudoinverse,
    DEFAULT_RANK_TOL,
};
pub use svd::{frobenius_norm, spectral_norm, svd, svd_truncated, Svd, TruncatedSvd};
pub(crate) use svd::numerical_rank;
