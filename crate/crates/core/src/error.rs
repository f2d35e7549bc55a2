use thiserror::Error;

/// Errors raised by batch construction, configuration checks and drivers.
///
/// Step-size underflow inside a single system is not an error: it is
/// recorded in that system's [`IntegrationStats`](crate::IntegrationStats).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum OdeError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid interval: start {start}, end {end}")]
    InvalidInterval { start: f64, end: f64 },

    #[error("invalid outer step size {0}")]
    InvalidOuterStep(f64),

    #[error("RKC needs at least two stages, got {0}")]
    InvalidStageCount(usize),

    #[error("invalid tolerance setting: {0}")]
    InvalidTolerance(String),

    #[error("worker count must be positive")]
    NoWorkers,

    #[error("initial-condition asset: {0}")]
    Asset(String),
}

pub type Result<T, E = OdeError> = std::result::Result<T, E>;
