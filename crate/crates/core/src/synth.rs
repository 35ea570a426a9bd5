//! Synthetic test matrices with a prescribed spectrum.
//!
//! `A = U diag(s) Vᵀ + noise · G / √(mn)` where `U`, `V` have random
//! orthonormal columns and `G` has standard normal entries, so the noise term
//! has Frobenius norm close to `noise`.

use std::fmt;
use std::str::FromStr;

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng::{stream_rng, STREAM_SYNTH_LEFT, STREAM_SYNTH_NOISE, STREAM_SYNTH_RIGHT};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Spectrum {
    /// All singular values equal to 1.
    Flat,
    /// `1, ratio, ratio², …`.
    Geometric { ratio: f64 },
    /// Explicit values, one per rank.
    Custom { values: Vec<f64> },
}

impl Spectrum {
    pub fn values(&self, rank: usize) -> Vec<f64> {
        match self {
            Spectrum::Flat => vec![1.0; rank],
            Spectrum::Geometric { ratio } => (0..rank).map(|i| ratio.powi(i as i32)).collect(),
            Spectrum::Custom { values } => values.clone(),
        }
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spectrum::Flat => f.write_str("flat"),
            Spectrum::Geometric { ratio } => write!(f, "geometric:{ratio}"),
            Spectrum::Custom { values } => {
                let v: Vec<String> = values.iter().map(f64::to_string).collect();
                write!(f, "custom:{}", v.join(","))
            }
        }
    }
}

/// Parses `flat`, `geometric:<ratio>` or `custom:<v1>,<v2>,...`.
impl FromStr for Spectrum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("bad number {t:?} in spectrum {s:?}")))
        };
        match kind.to_ascii_lowercase().as_str() {
            "flat" if arg.is_empty() => Ok(Spectrum::Flat),
            "geometric" => Ok(Spectrum::Geometric { ratio: num(arg)? }),
            "custom" => Ok(Spectrum::Custom {
                values: arg.split(',').map(num).collect::<Result<_>>()?,
            }),
            _ => Err(Error::invalid(format!(
                "unknown spectrum {s:?} (use flat, geometric:<ratio> or custom:<v1>,<v2>,...)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub rows: usize,
    pub cols: usize,
    pub target_rank: usize,
    pub spectrum: Spectrum,
    pub noise_level: f64,
    pub seed: u64,
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::invalid("rows and cols must be positive"));
        }
        if self.target_rank == 0 || self.target_rank > self.rows.min(self.cols) {
            return Err(Error::invalid(format!(
                "target rank {} must lie in 1..={}",
                self.target_rank,
                self.rows.min(self.cols)
            )));
        }
        if !(self.noise_level >= 0.0 && self.noise_level.is_finite()) {
            return Err(Error::invalid(format!("noise level {} must be ≥ 0", self.noise_level)));
        }
        match &self.spectrum {
            Spectrum::Flat => {}
            Spectrum::Geometric { ratio } => {
                if !(*ratio > 0.0 && ratio.is_finite()) {
                    return Err(Error::invalid(format!("geometric ratio {ratio} must be positive")));
                }
            }
            Spectrum::Custom { values } => {
                if values.len() != self.target_rank {
                    return Err(Error::invalid(format!(
                        "custom spectrum has {} values for rank {}",
                        values.len(),
                        self.target_rank
                    )));
                }
                if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                    return Err(Error::invalid("custom spectrum values must be finite and ≥ 0"));
                }
            }
        }
        Ok(())
    }
}

/// `rows × k` matrix with orthonormal columns from a Gaussian sample.
pub fn random_orthonormal(rows: usize, k: usize, seed: u64, stream: u64) -> DenseMatrix {
    assert!(k <= rows);
    let mut rng = stream_rng(seed, stream);
    let mut cols: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..rows).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    // Two passes of modified Gram-Schmidt.
    for j in 0..k {
        for _ in 0..2 {
            for q in 0..j {
                let d: f64 = cols[q].iter().zip(&cols[j]).map(|(a, b)| a * b).sum();
                let qc = cols[q].clone();
                cols[j].iter_mut().zip(&qc).for_each(|(c, qi)| *c -= d * qi);
            }
        }
        let n = cols[j].iter().map(|v| v * v).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|v| *v /= n);
    }
    DenseMatrix::from_columns(&cols)
}

/// Build the matrix described by `spec`; deterministic per seed.
pub fn synth(spec: &SynthSpec) -> Result<DenseMatrix> {
    spec.validate()?;
    let k = spec.target_rank;
    let u = random_orthonormal(spec.rows, k, spec.seed, STREAM_SYNTH_LEFT);
    let v = random_orthonormal(spec.cols, k, spec.seed, STREAM_SYNTH_RIGHT);
    let mut a = u.scale_cols(&spec.spectrum.values(k)).matmul(&v.transpose());
    if spec.noise_level > 0.0 {
        let mut rng = stream_rng(spec.seed, STREAM_SYNTH_NOISE);
        let s = spec.noise_level / ((spec.rows * spec.cols) as f64).sqrt();
        let noise = DenseMatrix::from_fn(spec.rows, spec.cols, |_, _| {
            let g: f64 = StandardNormal.sample(&mut rng);
            s * g
        });
        a = a.add(&noise);
    }
    Ok(a)
}

/// Standard normal `rows × cols` matrix.
pub fn gaussian(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let mut rng = stream_rng(seed, 0);
    DenseMatrix::from_fn(rows, cols, |_, _| StandardNormal.sample(&mut rng))
}
