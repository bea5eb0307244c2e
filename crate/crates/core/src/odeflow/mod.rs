//! Periodic competitive Lotka–Volterra systems: RK4 integration, the
//! Poincaré (period) map, sign conditions on the coefficients and the ratio
//! monotonicity of ordered solutions.

mod conditions;
mod integrate;
mod system;
mod wang_jiang;

pub use conditions::{check_a_conditions, is_competitive, DEFAULT_TIME_GRID};
pub use integrate::{integrate, IntegrationConfig, Trajectory};
pub use system::{random_competitive_system, FourierSeries, PeriodicSystem};
pub use wang_jiang::{wang_jiang_check, WangJiangOutcome, SLOPE_FLOOR};

pub(crate) use integrate::log_growth;

use crate::models::PoincareModel;

/// The period map `T = T_1` of `system` as a competition model.
pub fn poincare_map(system: PeriodicSystem, config: IntegrationConfig) -> PoincareModel {
    PoincareModel::new(system, config)
}
