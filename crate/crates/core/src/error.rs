use thiserror::Error;

/// Errors raised by the delay-Doppler processing library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A pilot construction precondition does not hold (parity, coprimality).
    #[error("pilot construction failed: {0}")]
    Construction(String),

    #[error("crystallization violated: {0}")]
    Crystallization(String),

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
