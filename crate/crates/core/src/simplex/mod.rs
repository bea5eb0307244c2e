//! Numerical carrying simplex: a radial surface computed by iterating the
//! map on a surface above the attractor, and checks that the result is
//! invariant, unordered and attracting.

mod grid;
mod interp;
mod surface;
mod sweep;
mod verify;

pub use grid::SimplexGrid;
pub use interp::{interpolate, segment_degree, triangle_degree};
pub use surface::{
    compute_carrying_simplex, compute_carrying_simplex_with, initial_radii, RadialSurface, Scheme,
    SurfaceConfig, SurfaceMetadata, DESCENT_SLACK, INIT_FACTOR,
};
pub use sweep::{classify_orbit, sweep_1d, OrbitClass, SweepRow, MAX_PERIOD, SETTLE_TOL};
pub use verify::{
    asymptotic_check, invariance_residual, point_cloud, random_direction, random_starts,
    unordered_check, unordered_points, verify_surface, AsymptoticStats, UnorderedOutcome,
    VerificationReport, VerifyConfig,
};
