use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::models::CompetitionModel;
use crate::order::StateVector;

use super::spectral::{spectral_radius, SpectralFailure};

/// `M(x) = -diag(x_i / G_i(x)) G'(x)`, so that `T'(x) = diag(G(x)) (I - M(x))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompetitionMatrix {
    entries: DMatrix<f64>,
    basepoint: StateVector,
}

impl CompetitionMatrix {
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn basepoint(&self) -> &StateVector {
        &self.basepoint
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.entries.row_iter().map(|r| r.sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        self.entries.column_iter().map(|c| c.sum()).collect()
    }

    pub fn spectral_radius(&self) -> Result<f64, SpectralFailure> {
        spectral_radius(&self.entries)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.entries.row_iter().map(|r| r.iter().copied().collect()).collect()
    }
}

pub fn competition_matrix(model: &dyn CompetitionModel, x: &StateVector) -> Result<CompetitionMatrix> {
    let g = model.eval_growth(x)?;
    if let Some(i) = g.iter().position(|&v| v <= 0.0) {
        return Err(Error::CompetitionMatrixUndefined { index: i + 1 });
    }
    let jac = model.eval_growth_jacobian(x)?;
    let n = model.dim();
    let entries = DMatrix::from_fn(n, n, |i, j| -(x[i] / g[i]) * jac[(i, j)]);
    Ok(CompetitionMatrix { entries, basepoint: x.clone() })
}

/// Every row sum of `M(x)` is below 1.
pub fn gershgorin_row_check(model: &dyn CompetitionModel, x: &StateVector) -> Result<bool> {
    Ok(competition_matrix(model, x)?.row_sums().iter().all(|&s| s < 1.0))
}

/// Every column sum of `M(x)` is below 1.
pub fn gershgorin_col_check(model: &dyn CompetitionModel, x: &StateVector) -> Result<bool> {
    Ok(competition_matrix(model, x)?.col_sums().iter().all(|&s| s < 1.0))
}
