use thiserror::Error;

/// Errors raised by grid operations, state construction, transforms and the
/// evolution machinery.
#[derive(Debug, Error)]
pub enum Error {
    /// A request that is outside an operation's domain (bad axis, bad
    /// parameter range, malformed grid).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical precondition that callers promised to uphold was violated
    /// (Wronskian drift, symmetry residual, Hermiticity, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Feature deliberately outside the supported envelope (potential degree,
    /// catalog bounds).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Time stepping blew up (NaN/overflow) or the step size violates the
    /// stability bound.
    #[error("numerical instability at step {step}: {detail}")]
    Instability { step: usize, detail: String },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
