//! Competitive maps `T_i(x) = x_i G_i(x)` on the nonnegative cone and their
//! carrying simplex: the unordered invariant hypersurface that attracts every
//! nonzero orbit.
//!
//! - [`models`]: Ricker (May–Oster), Leslie–Gower, neural-network and
//!   periodic Lotka–Volterra period maps, plus JSON model files.
//! - [`criteria`]: numerical checks of the hypotheses that guarantee a unique
//!   carrying simplex, collected into a [`criteria::CriteriaReport`].
//! - [`simplex`]: the surface itself, computed as a radial graph over the
//!   simplex of directions, and a-posteriori verification.
//! - [`odeflow`]: fixed-step RK4 for periodic Lotka–Volterra systems and the
//!   ratio-monotonicity check for ordered solution pairs.
//! - [`cli`]: the `carsimplex` binary.
//!
//! ```
//! use carrying_simplex::models::MayOster;
//! use carrying_simplex::simplex::compute_carrying_simplex;
//!
//! let model = MayOster::new(vec![0.5, 0.4], vec![vec![1.0, 0.2], vec![0.3, 1.0]])?;
//! let surface = compute_carrying_simplex(&model, 256, 1e-10, 5_000)?;
//! assert!((surface.point_at(&[1.0, 0.0])[0] - 0.5).abs() < 1e-9);
//! # Ok::<(), carrying_simplex::Error>(())
//! ```

pub mod cli;
pub mod criteria;
pub mod error;
pub mod io;
pub mod models;
pub mod odeflow;
pub mod order;
pub mod simplex;

pub use error::{Error, Result};
