//! Error types shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Structural problem with an input (sizes, ranges, parity).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The requested point is outside the mathematical domain (pole, branch cut).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numeric routine could not reach the requested accuracy.
    #[error("precision not reached: requested 1e-{requested}, achieved about {achieved}")]
    Precision { requested: u32, achieved: String },

    /// Two internal routes disagreed beyond tolerance.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
