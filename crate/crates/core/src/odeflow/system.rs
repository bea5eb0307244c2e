use std::f64::consts::TAU;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Period-1 coefficient `c + Σ_k c_k cos(2πkt) + s_k sin(2πkt)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierSeries {
    #[serde(rename = "const")]
    pub constant: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cos: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sin: Vec<f64>,
}

impl FourierSeries {
    pub fn constant(c: f64) -> Self {
        Self { constant: c, cos: Vec::new(), sin: Vec::new() }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut v = self.constant;
        for (k, c) in self.cos.iter().enumerate() {
            v += c * (TAU * (k + 1) as f64 * t).cos();
        }
        for (k, s) in self.sin.iter().enumerate() {
            v += s * (TAU * (k + 1) as f64 * t).sin();
        }
        v
    }

    fn is_finite(&self) -> bool {
        self.constant.is_finite()
            && self.cos.iter().all(|c| c.is_finite())
            && self.sin.iter().all(|c| c.is_finite())
    }
}

/// Periodic Lotka–Volterra system `u̇_i = u_i (B_i(t) - Σ_j A_ij(t) u_j)`.
///
/// Construction only checks shapes and finiteness; sign conditions on the
/// coefficients are verified by [`check_a_conditions`](super::check_a_conditions).
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSystem {
    b: Vec<FourierSeries>,
    a: Vec<Vec<FourierSeries>>,
}

impl PeriodicSystem {
    pub fn new(b: Vec<FourierSeries>, a: Vec<Vec<FourierSeries>>) -> Result<Self> {
        let n = b.len();
        if n == 0 {
            return Err(Error::InvalidParameter {
                field: "B".into(),
                reason: "at least one species required".into(),
            });
        }
        for (i, s) in b.iter().enumerate() {
            if !s.is_finite() {
                return Err(Error::InvalidParameter {
                    field: format!("B[{}]", i + 1),
                    reason: "non-finite Fourier coefficient".into(),
                });
            }
        }
        if a.len() != n {
            return Err(Error::InvalidParameter {
                field: "A".into(),
                reason: format!("expected {n} rows, got {}", a.len()),
            });
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter {
                    field: format!("A[{}]", i + 1),
                    reason: format!("expected {n} entries, got {}", row.len()),
                });
            }
            if let Some(j) = row.iter().position(|s| !s.is_finite()) {
                return Err(Error::InvalidParameter {
                    field: format!("A[{}][{}]", i + 1, j + 1),
                    reason: "non-finite Fourier coefficient".into(),
                });
            }
        }
        Ok(Self { b, a })
    }

    /// Autonomous system with constant coefficients.
    pub fn constant(b: Vec<f64>, a: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(
            b.into_iter().map(FourierSeries::constant).collect(),
            a.into_iter()
                .map(|row| row.into_iter().map(FourierSeries::constant).collect())
                .collect(),
        )
    }

    /// Logistic equation `u̇ = r u (σ - u)`.
    pub fn logistic(r: f64, sigma: f64) -> Result<Self> {
        Self::constant(vec![r * sigma], vec![vec![r]])
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn b_series(&self) -> &[FourierSeries] {
        &self.b
    }

    pub fn a_series(&self) -> &[Vec<FourierSeries>] {
        &self.a
    }

    pub fn b_at(&self, t: f64) -> Vec<f64> {
        self.b.iter().map(|s| s.eval(t)).collect()
    }

    pub fn a_at(&self, t: f64) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| self.a[i][j].eval(t))
    }

    /// Per-capita growth rates `G_i(t, u) = B_i(t) - Σ_j A_ij(t) u_j`.
    pub fn per_capita(&self, t: f64, u: &[f64]) -> Vec<f64> {
        (0..self.dim())
            .map(|i| {
                let mut g = self.b[i].eval(t);
                for (j, uj) in u.iter().enumerate() {
                    g -= self.a[i][j].eval(t) * uj;
                }
                g
            })
            .collect()
    }
}

/// Random competitive system: every coefficient stays strictly positive
/// because harmonic amplitudes are bounded by a fifth of the constant term.
pub fn random_competitive_system<R: Rng>(n: usize, harmonics: usize, rng: &mut R) -> PeriodicSystem {
    let series = |lo: f64, hi: f64, rng: &mut R| {
        let c = rng.random_range(lo..hi);
        let amp = 0.2 * c / (2 * harmonics.max(1)) as f64;
        FourierSeries {
            constant: c,
            cos: (0..harmonics).map(|_| rng.random_range(-amp..amp)).collect(),
            sin: (0..harmonics).map(|_| rng.random_range(-amp..amp)).collect(),
        }
    };
    let b = (0..n).map(|_| series(0.5, 1.5, rng)).collect();
    let a = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { series(0.8, 1.2, rng) } else { series(0.1, 0.6, rng) })
                .collect()
        })
        .collect();
    PeriodicSystem::new(b, a).expect("generated coefficients are finite")
}
