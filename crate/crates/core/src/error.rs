use thiserror::Error;

/// Errors raised anywhere in the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("no support: {0}")]
    NoSupport(String),

    #[error("divergent quantity: {0}")]
    Divergent(String),

    #[error("empty data: {0}")]
    EmptyData(String),

    #[error("resample {index} failed: {source}")]
    Resample { index: usize, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidInput(format!($($arg)*))
    };
}

pub(crate) use invalid;
