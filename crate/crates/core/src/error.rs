use thiserror::Error;

/// Errors produced by the analytic routines and the file readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid model: {}", .0.join("; "))]
    Invalid(Vec<String>),

    #[error("enumeration budget exceeded: {required} candidates needed, budget is {budget}")]
    Budget { required: u128, budget: u128 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid rational {0:?}")]
    Rational(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
