use std::path::PathBuf;

use batchode::OdeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error("cannot encode summary: {0}")]
    Json(#[from] serde_json::Error),
}

impl BenchError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Io { .. } => 1,
            BenchError::Config(_) => 2,
            BenchError::Ode(_) | BenchError::Json(_) => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;
