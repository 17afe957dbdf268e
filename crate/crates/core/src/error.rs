use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A configuration (density, radius law, experiment spec) is unusable.
    #[error("configuration error: {0}")]
    Config(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
    /// A verification or audit found a counterexample.
    #[error("audit failure: {0}")]
    Audit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! bail_arg {
    ($($arg:tt)*) => {
        return Err($crate::error::Error::Argument(format!($($arg)*)))
    };
}

macro_rules! bail_config {
    ($($arg:tt)*) => {
        return Err($crate::error::Error::Config(format!($($arg)*)))
    };
}

pub(crate) use bail_arg;
pub(crate) use bail_config;
