//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical precondition was violated (negative frequency, singular
    /// covariance matrix, efficiency outside [0, 1], ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid run configuration detected before any computation.
    #[error("config error: {0}")]
    Config(String),

    /// Adaptive quadrature failed to reach the requested tolerance.
    /// Carries the last estimate so callers can still inspect it.
    #[error("quadrature did not converge (last estimate {last_estimate})")]
    Convergence { last_estimate: f64 },

    /// Bisection bracket does not contain a sign change.
    #[error("bracket error: {0}")]
    Bracket(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialize(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
