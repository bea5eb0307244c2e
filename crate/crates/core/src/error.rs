use thiserror::Error;

/// Errors raised across the crate.
///
/// Species and coordinate indices carried by variants are 1-based, matching
/// the way they are printed in reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid state: coordinate {index} is {value} (must be finite and >= 0)")]
    InvalidState { index: usize, value: f64 },

    #[error("state vector must have at least one coordinate")]
    EmptyState,

    #[error("no radial projection at origin")]
    ZeroVector,

    #[error("invalid parameter {field}: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("model evaluation produced a non-finite growth factor at index {index}")]
    ModelEvaluation { index: usize },

    #[error("no axial fixed point for species {species}")]
    NoAxialFixedPoint { species: usize },

    #[error("competition matrix undefined (nonpositive growth factor at index {index})")]
    CompetitionMatrixUndefined { index: usize },

    #[error("direction map not injective at resolution {m}; refine grid")]
    NotInjective { m: usize },

    #[error("integration failed at t = {time}")]
    Integration { time: f64 },

    #[error("{0}")]
    Precondition(String),

    #[error("trajectory left the evaluation box at step {step}")]
    Escaped { step: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
