use thiserror::Error;

/// Errors raised by the numerical and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no sign change of {what} over bracket [{lo}, {hi}]")]
    Bracket { what: String, lo: f64, hi: f64 },

    #[error("solver did not converge for mode(s) {modes:?} at b = {b}")]
    NotConverged { b: f64, modes: Vec<i64> },

    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
