use super::{CompetitionModel, Family};
use crate::error::{Error, Result};
use crate::odeflow::{log_growth, IntegrationConfig, PeriodicSystem};
use crate::order::StateVector;

const AXIAL_MAX_ITER: usize = 10_000;
const AXIAL_TOL: f64 = 1e-14;

/// Period map `T = T_1` of a periodic Lotka–Volterra system.
///
/// `G_i(x) = exp(L_i(1))` where `L` is the accumulated per-capita growth along
/// the solution from `x`, so `T_i(x) = x_i G_i(x)` holds bit-exactly and `G`
/// stays defined on the faces of the cone. The Jacobian falls back to
/// central differences.
#[derive(Debug, Clone)]
pub struct PoincareModel {
    system: PeriodicSystem,
    config: IntegrationConfig,
}

impl PoincareModel {
    pub fn new(system: PeriodicSystem, config: IntegrationConfig) -> Self {
        Self { system, config }
    }

    pub fn system(&self) -> &PeriodicSystem {
        &self.system
    }

    pub fn config(&self) -> &IntegrationConfig {
        &self.config
    }

    fn axial_start(&self, i: usize) -> f64 {
        // starting above max_t B_i / min_t A_ii puts the orbit on the
        // decreasing side of the axis dynamics
        let (mut b_max, mut a_min) = (0.0f64, f64::INFINITY);
        for k in 0..64 {
            let t = k as f64 / 64.0;
            b_max = b_max.max(self.system.b_series()[i].eval(t));
            a_min = a_min.min(self.system.a_series()[i][i].eval(t));
        }
        if a_min > 0.0 && b_max > 0.0 {
            b_max / a_min
        } else {
            1.0
        }
    }
}

impl CompetitionModel for PoincareModel {
    fn dim(&self) -> usize {
        self.system.dim()
    }

    fn name(&self) -> &'static str {
        "periodic_lv"
    }

    fn growth(&self, x: &[f64]) -> Vec<f64> {
        match log_growth(&self.system, x, 0.0, 1.0, self.config.steps_per_period(), |_, _| {}) {
            Ok(l) => l.into_iter().map(f64::exp).collect(),
            Err(_) => vec![f64::NAN; x.len()],
        }
    }

    /// Iterates `T` along each axis until successive values agree to 1e-14
    /// (relative).
    fn axial_fixed_points(&self) -> Result<StateVector> {
        let n = self.dim();
        let mut q = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = self.axial_start(i);
            let mut converged = false;
            for _ in 0..AXIAL_MAX_ITER {
                let p = StateVector::on_axis(n, i, x)?;
                let next = self.eval_map(&p)?[i];
                let done = (next - x).abs() <= AXIAL_TOL * (1.0 + x);
                x = next;
                if done {
                    converged = true;
                    break;
                }
            }
            if !converged || !(x > 0.0) {
                return Err(Error::NoAxialFixedPoint { species: i + 1 });
            }
            q.push(x);
        }
        StateVector::new(q)
    }

    fn family(&self) -> Family<'_> {
        Family::Poincare(self)
    }
}
