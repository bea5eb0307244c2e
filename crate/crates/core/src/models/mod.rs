//! Competition models `T_i(x) = x_i G_i(x)` on the positive cone.
//!
//! A model supplies the per-capita growth factors `G(x)` and, optionally, their
//! Jacobian `G'(x)`; the map itself, its Jacobian
//! `T'(x) = diag(G(x)) + diag(x) G'(x)` and input/output validation are provided
//! on top. Because `T` multiplies coordinate `i` by `x_i`, faces of the cone are
//! invariant exactly, not approximately.

mod leslie_gower;
mod may_oster;
mod neural;
mod poincare;
pub mod description;

use std::fmt::Debug;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::order::StateVector;

pub use leslie_gower::LeslieGower;
pub use may_oster::MayOster;
pub use neural::{NeuralNet, ShiftedSoftplus, Transfer};
pub use poincare::PoincareModel;
pub use description::{load_model, ModelSpec};

/// Borrowed view of a concrete model, for family-specific closed-form criteria.
#[derive(Debug, Clone, Copy)]
pub enum Family<'a> {
    MayOster(&'a MayOster),
    LeslieGower(&'a LeslieGower),
    NeuralNet(&'a NeuralNet),
    Poincare(&'a PoincareModel),
    Other,
}

pub trait CompetitionModel: Debug + Send + Sync {
    fn dim(&self) -> usize;

    fn name(&self) -> &'static str;

    /// Raw growth factors. May contain non-finite values; [`eval_growth`]
    /// screens them.
    ///
    /// [`eval_growth`]: CompetitionModel::eval_growth
    fn growth(&self, x: &[f64]) -> Vec<f64>;

    /// Jacobian `∂G_i/∂x_j`. Defaults to central differences with step
    /// `1e-6 · (1 + |x_j|)`; the closed-form families override it.
    fn growth_jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        finite_difference_jacobian(x, |p| self.growth(p))
    }

    /// Positive fixed point `q_i` of `T` restricted to each coordinate axis.
    fn axial_fixed_points(&self) -> Result<StateVector>;

    fn family(&self) -> Family<'_> {
        Family::Other
    }

    fn eval_growth(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        let g = self.growth(x);
        if let Some(i) = g.iter().position(|v| !v.is_finite()) {
            return Err(Error::ModelEvaluation { index: i + 1 });
        }
        Ok(g)
    }

    fn eval_map(&self, x: &[f64]) -> Result<StateVector> {
        let g = self.eval_growth(x)?;
        StateVector::new(x.iter().zip(&g).map(|(xi, gi)| xi * gi).collect())
    }

    fn eval_growth_jacobian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.check_dim(x)?;
        let j = self.growth_jacobian(x);
        if let Some(k) = j.iter().position(|v| !v.is_finite()) {
            return Err(Error::ModelEvaluation { index: k % self.dim() + 1 });
        }
        Ok(j)
    }

    /// `T'(x) = diag(G(x)) + diag(x) G'(x)`.
    fn map_jacobian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        let g = self.eval_growth(x)?;
        let mut jac = self.eval_growth_jacobian(x)?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                jac[(i, j)] *= x[i];
            }
            jac[(i, i)] += g[i];
        }
        Ok(jac)
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }
}

/// Central-difference Jacobian of `f` at `x`, step `1e-6 · (1 + |x_j|)`.
pub fn finite_difference_jacobian<F>(x: &[f64], f: F) -> DMatrix<f64>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = x.len();
    let mut jac = DMatrix::zeros(n, n);
    let mut p = x.to_vec();
    for j in 0..n {
        let h = 1e-6 * (1.0 + x[j].abs());
        p[j] = x[j] + h;
        let fp = f(&p);
        p[j] = x[j] - h;
        let fm = f(&p);
        p[j] = x[j];
        for i in 0..n {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

/// Parameter vector check: length `n`, finite, and `> 0` (or `>= 0` when
/// `allow_zero`). Field names in errors are 1-based.
pub(crate) fn validate_vector(name: &str, v: &[f64], n: usize, allow_zero: bool) -> Result<()> {
    if v.len() != n {
        return Err(Error::InvalidParameter {
            field: name.into(),
            reason: format!("expected {n} entries, got {}", v.len()),
        });
    }
    for (i, &c) in v.iter().enumerate() {
        let ok = c.is_finite() && if allow_zero { c >= 0.0 } else { c > 0.0 };
        if !ok {
            let bound = if allow_zero { ">= 0" } else { "> 0" };
            return Err(Error::InvalidParameter {
                field: format!("{name}[{}]", i + 1),
                reason: format!("must be finite and {bound}, got {c}"),
            });
        }
    }
    Ok(())
}

/// Interaction matrix check: `n × n`, diagonal `> 0`, off-diagonal `>= 0`.
pub(crate) fn validate_interactions(name: &str, a: &[Vec<f64>], n: usize) -> Result<DMatrix<f64>> {
    if a.len() != n {
        return Err(Error::InvalidParameter {
            field: name.into(),
            reason: format!("expected {n} rows, got {}", a.len()),
        });
    }
    let mut m = DMatrix::zeros(n, n);
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidParameter {
                field: format!("{name}[{}]", i + 1),
                reason: format!("expected {n} entries, got {}", row.len()),
            });
        }
        for (j, &c) in row.iter().enumerate() {
            let ok = c.is_finite() && if i == j { c > 0.0 } else { c >= 0.0 };
            if !ok {
                let bound = if i == j { "> 0" } else { ">= 0" };
                return Err(Error::InvalidParameter {
                    field: format!("{name}[{}][{}]", i + 1, j + 1),
                    reason: format!("must be finite and {bound}, got {c}"),
                });
            }
            m[(i, j)] = c;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_names_the_field() {
        let err = validate_interactions("A", &[vec![-1.0, 0.2], vec![0.3, 1.0]], 2).unwrap_err();
        assert!(err.to_string().contains("A[1][1]"), "{err}");
        let err = validate_vector("B", &[0.5, 0.0], 2, false).unwrap_err();
        assert!(err.to_string().contains("B[2]"), "{err}");
        assert!(validate_vector("B", &[0.5], 2, false).is_err());
        assert!(validate_interactions("A", &[vec![1.0, 0.0], vec![0.0, 1.0]], 2).is_ok());
    }

    #[test]
    fn fd_jacobian_of_linear_map() {
        let j = finite_difference_jacobian(&[1.0, 2.0], |p| vec![2.0 * p[0] + p[1], -p[1]]);
        assert!((j[(0, 0)] - 2.0).abs() < 1e-8);
        assert!((j[(0, 1)] - 1.0).abs() < 1e-8);
        assert!(j[(1, 0)].abs() < 1e-8);
        assert!((j[(1, 1)] + 1.0).abs() < 1e-8);
    }
}
