use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Model or algorithm parameters violate a precondition.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Input data does not have the required shape or content.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The eigensolver did not reach the requested residual.
    #[error("eigensolver failed to converge (residual {residual:.3e}): {message}")]
    SolverFailure { residual: f64, message: String },

    /// A plug-in estimate has an empty or zero denominator.
    #[error("estimate undefined: {0}")]
    UndefinedEstimate(String),

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
