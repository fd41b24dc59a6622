use thiserror::Error;

/// Errors produced by the simulation toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("propagation diverged at t = {t} (dt = {dt})")]
    Diverged { t: f64, dt: f64 },

    #[error("unstable step: {0}")]
    Unstable(String),

    #[error("condensate not converged: {0}")]
    NotConverged(String),

    #[error("eigensolver failure on operator of size {size}: {reason}")]
    Eigensolver { size: usize, reason: String },

    #[error("mode index {index} out of range (spectrum holds {available} modes)")]
    ModeIndex { index: usize, available: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("fit error: {0}")]
    Fit(String),

    #[error("missing snapshots: {0}")]
    MissingSnapshots(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
