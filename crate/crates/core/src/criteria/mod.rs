//! Competition matrix `M(x)`, spectral bounds, and sampled checks of the
//! hypotheses that make the carrying simplex unique.

mod checks;
mod matrix;
mod report;
pub mod spectral;

pub use checks::{
    check_c0, check_c1, check_c4, check_c5, check_inverse_positivity, check_retrotone,
    check_spectral_condition, check_sublinearity, default_region, effective_grid, grid_points,
    leslie_gower_upper_bounds, may_oster_bounds, model_criterion, neural_gain_bound, run_criteria,
    sample_region, CheckConfig, LAMBDA_GAP, NEAR_TIE,
};
pub use matrix::{competition_matrix, gershgorin_col_check, gershgorin_row_check, CompetitionMatrix};
pub use report::{ConditionRecord, CriteriaReport, Verdict, Witness};
pub use spectral::{perron_root, spectral_radius, SpectralFailure};
