use std::fmt::Debug;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{validate_interactions, validate_vector, CompetitionModel, Family};
use crate::error::{Error, Result};
use crate::order::StateVector;

/// Increasing transfer function `σ` with `σ(0) = 0`, `σ' > 0` and
/// `sup σ' = gain`.
pub trait Transfer: Debug + Send + Sync {
    fn value(&self, s: f64) -> f64;
    fn slope(&self, s: f64) -> f64;
    fn gain(&self) -> f64;
}

/// `σ(s) = γ (ln(1 + e^s) - ln 2)`, so `σ'(s) = γ / (1 + e^{-s}) ∈ (0, γ)`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedSoftplus {
    gain: f64,
}

impl ShiftedSoftplus {
    pub fn new(gain: f64) -> Result<Self> {
        if !(gain.is_finite() && gain > 0.0) {
            return Err(Error::InvalidParameter {
                field: "gamma".into(),
                reason: format!("must be finite and > 0, got {gain}"),
            });
        }
        Ok(Self { gain })
    }
}

fn softplus(s: f64) -> f64 {
    if s > 0.0 {
        s + (-s).exp().ln_1p()
    } else {
        s.exp().ln_1p()
    }
}

impl Transfer for ShiftedSoftplus {
    fn value(&self, s: f64) -> f64 {
        self.gain * (softplus(s) - std::f64::consts::LN_2)
    }

    fn slope(&self, s: f64) -> f64 {
        self.gain / (1.0 + (-s).exp())
    }

    fn gain(&self) -> f64 {
        self.gain
    }
}

/// Competitive recurrent network `T_i(x) = x_i exp σ(B_i - Σ_j A_ij x_j)`.
#[derive(Debug, Clone)]
pub struct NeuralNet {
    b: DVector<f64>,
    a: DMatrix<f64>,
    transfer: Arc<dyn Transfer>,
}

impl NeuralNet {
    /// Network with the default shifted-softplus transfer of the given gain.
    pub fn new(b: Vec<f64>, a: Vec<Vec<f64>>, gain: f64) -> Result<Self> {
        Self::with_transfer(b, a, Arc::new(ShiftedSoftplus::new(gain)?))
    }

    pub fn with_transfer(b: Vec<f64>, a: Vec<Vec<f64>>, transfer: Arc<dyn Transfer>) -> Result<Self> {
        let n = b.len();
        validate_vector("B", &b, n.max(1), false)?;
        let a = validate_interactions("A", &a, n)?;
        Ok(Self { b: DVector::from_vec(b), a, transfer })
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn transfer(&self) -> &dyn Transfer {
        self.transfer.as_ref()
    }

    pub fn gain(&self) -> f64 {
        self.transfer.gain()
    }

    /// Input signals `s_i(x) = B_i - Σ_j A_ij x_j`.
    pub fn signals(&self, x: &[f64]) -> DVector<f64> {
        &self.b - &self.a * DVector::from_column_slice(x)
    }
}

impl CompetitionModel for NeuralNet {
    fn dim(&self) -> usize {
        self.b.len()
    }

    fn name(&self) -> &'static str {
        "neural_net"
    }

    fn growth(&self, x: &[f64]) -> Vec<f64> {
        self.signals(x)
            .iter()
            .map(|&s| self.transfer.value(s).exp())
            .collect()
    }

    /// `∂G_i/∂x_j = -σ'(s_i) A_ij G_i(x)`.
    fn growth_jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let s = self.signals(x);
        let g: Vec<f64> = s.iter().map(|&v| self.transfer.value(v).exp()).collect();
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            -self.transfer.slope(s[i]) * self.a[(i, j)] * g[i]
        })
    }

    /// `σ` vanishes only at 0, so the axial fixed point solves `B_i = A_ii x`.
    fn axial_fixed_points(&self) -> Result<StateVector> {
        StateVector::new((0..self.dim()).map(|i| self.b[i] / self.a[(i, i)]).collect())
    }

    fn family(&self) -> Family<'_> {
        Family::NeuralNet(self)
    }
}
