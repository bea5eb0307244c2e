use nalgebra::{DMatrix, DVector};

use super::{validate_interactions, validate_vector, CompetitionModel, Family};
use crate::error::Result;
use crate::order::StateVector;

/// Exponential competition map `T_i(x) = x_i exp(B_i - Σ_j A_ij x_j)`.
///
/// With `n = 1` this is the Ricker map `x e^{b - a x}`.
#[derive(Debug, Clone)]
pub struct MayOster {
    b: DVector<f64>,
    a: DMatrix<f64>,
}

impl MayOster {
    pub fn new(b: Vec<f64>, a: Vec<Vec<f64>>) -> Result<Self> {
        let n = b.len();
        validate_vector("B", &b, n.max(1), false)?;
        let a = validate_interactions("A", &a, n)?;
        Ok(Self { b: DVector::from_vec(b), a })
    }

    /// The scalar map `x ↦ x e^{b - a x}`.
    pub fn ricker(b: f64, a: f64) -> Result<Self> {
        Self::new(vec![b], vec![vec![a]])
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    fn exponent(&self, x: &[f64]) -> DVector<f64> {
        &self.b - &self.a * DVector::from_column_slice(x)
    }
}

impl CompetitionModel for MayOster {
    fn dim(&self) -> usize {
        self.b.len()
    }

    fn name(&self) -> &'static str {
        "may_oster"
    }

    fn growth(&self, x: &[f64]) -> Vec<f64> {
        self.exponent(x).iter().map(|s| s.exp()).collect()
    }

    /// `∂G_i/∂x_j = -A_ij G_i(x)`.
    fn growth_jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let g = self.growth(x);
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| -self.a[(i, j)] * g[i])
    }

    /// `q_i = B_i / A_ii`.
    fn axial_fixed_points(&self) -> Result<StateVector> {
        StateVector::new((0..self.dim()).map(|i| self.b[i] / self.a[(i, i)]).collect())
    }

    fn family(&self) -> Family<'_> {
        Family::MayOster(self)
    }
}
