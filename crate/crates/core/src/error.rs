use thiserror::Error;

/// Errors produced by evaluation, transforms and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("failed to converge: {0}")]
    Convergence(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("grid along axis {axis} is not uniform with step {step} (relative deviation {deviation:e})")]
    NonUniformGrid { axis: usize, step: f64, deviation: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("resonant frequency tuple {frequencies:?}: c - sum k^2 = {denominator:e}")]
    Resonance { frequencies: Vec<f64>, denominator: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("points do not form a tensor grid: {0}")]
    NonTensorGrid(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
