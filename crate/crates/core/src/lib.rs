//! CX and CUR low-rank decompositions built by leverage-score column and row sampling.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense matrices, Jacobi SVD, pseudoinverses, projections.
//! * [`sampling`]: leverage-score probabilities and the Exactly(c) /
//!   Expected(c) samplers, encoded as [`SamplingPlan`]s.
//! * [`matmul`]: Monte-Carlo approximate matrix multiplication.
//! * [`regression`]: sampled generalized least squares and its diagnostics.
//! * [`decomp`]: CX and CUR decompositions, boosting, sample-size formulas.
//! * [`io`], [`synth`], [`eval`]: matrix files, synthetic test matrices and
//!   the reconstruction-ratio sweep harness used by the CLI.
//!
//! ```
//! use relcur::decomp::LowRankProblem;
//! use relcur::synth::{synth, Spectrum, SynthSpec};
//! use relcur::Method;
//!
//! let a = synth(&SynthSpec {
//!     rows: 50,
//!     cols: 40,
//!     target_rank: 10,
//!     spectrum: Spectrum::Geometric { ratio: 0.8 },
//!     noise_level: 0.01,
//!     seed: 7,
//! })?;
//! let problem = LowRankProblem::new(&a, 10)?;
//! let cur = problem.cur(30, 60, Method::Expected, 42)?;
//! assert!(cur.theta3 >= cur.cx.theta1 - 1e-10);
//! # Ok::<(), relcur::Error>(())
//! ```

pub mod decomp;
pub mod error;
pub mod eval;
pub mod io;
pub mod json;
pub mod linalg;
pub mod matmul;
pub mod regression;
pub mod rng;
pub mod sampling;
pub mod synth;

pub use decomp::{CurResult, CxResult};
pub use error::{Error, Result};
pub use linalg::{DenseMatrix, TruncatedSvd};
pub use matmul::MatmulResult;
pub use regression::{RegressionDiagnostics, RegressionSolution};
pub use sampling::{Method, SamplingPlan, SubspaceProbs};
