use nalgebra::{DMatrix, DVector};

use super::{validate_interactions, validate_vector, CompetitionModel, Family};
use crate::error::{Error, Result};
use crate::order::StateVector;

/// Rational competition map `T_i(x) = C_i x_i / (1 + Σ_j A_ij x_j)`.
#[derive(Debug, Clone)]
pub struct LeslieGower {
    c: DVector<f64>,
    a: DMatrix<f64>,
}

impl LeslieGower {
    pub fn new(c: Vec<f64>, a: Vec<Vec<f64>>) -> Result<Self> {
        let n = c.len();
        validate_vector("C", &c, n.max(1), false)?;
        let a = validate_interactions("A", &a, n)?;
        Ok(Self { c: DVector::from_vec(c), a })
    }

    pub fn c(&self) -> &DVector<f64> {
        &self.c
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    fn denominators(&self, x: &[f64]) -> DVector<f64> {
        (&self.a * DVector::from_column_slice(x)).add_scalar(1.0)
    }
}

impl CompetitionModel for LeslieGower {
    fn dim(&self) -> usize {
        self.c.len()
    }

    fn name(&self) -> &'static str {
        "leslie_gower"
    }

    fn growth(&self, x: &[f64]) -> Vec<f64> {
        let den = self.denominators(x);
        self.c.iter().zip(den.iter()).map(|(c, d)| c / d).collect()
    }

    /// `∂G_i/∂x_j = -A_ij G_i(x) / (1 + Σ_l A_il x_l)`.
    fn growth_jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let den = self.denominators(x);
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            -self.a[(i, j)] * self.c[i] / (den[i] * den[i])
        })
    }

    /// `q_i = (C_i - 1) / A_ii`, defined only for `C_i > 1`.
    fn axial_fixed_points(&self) -> Result<StateVector> {
        let mut q = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            if self.c[i] <= 1.0 {
                return Err(Error::NoAxialFixedPoint { species: i + 1 });
            }
            q.push((self.c[i] - 1.0) / self.a[(i, i)]);
        }
        StateVector::new(q)
    }

    fn family(&self) -> Family<'_> {
        Family::LeslieGower(self)
    }
}
