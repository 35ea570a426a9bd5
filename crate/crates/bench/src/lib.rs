//! Shared fixtures for the criterion benches.

use relcur::synth::{synth, Spectrum, SynthSpec};
use relcur::DenseMatrix;

/// Rank-`rank` matrix with a geometric spectrum plus 1% noise.
pub fn noisy_low_rank(rows: usize, cols: usize, rank: usize, seed: u64) -> DenseMatrix {
    synth(&SynthSpec {
        rows,
        cols,
        target_rank: rank,
        spectrum: Spectrum::Geometric { ratio: 0.8 },
        noise_level: 0.01,
        seed,
    })
    .expect("valid synthetic spec")
}
