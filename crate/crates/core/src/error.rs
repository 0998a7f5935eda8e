use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A series term (or the final sum) left the range of `f64`.
    #[error("non-finite series term at index {index}")]
    Overflow { index: usize },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("multiplier is not finite at exponent {exponent}")]
    NonFiniteMultiplier { exponent: f64 },

    #[error("unsupported term at exponent {exponent}: {reason}")]
    UnsupportedTerm { exponent: f64, reason: &'static str },

    #[error("integrand is not finite at {point}")]
    Evaluation { point: f64 },

    #[error("invalid model: {}", .0.join("; "))]
    InvalidModel(Vec<String>),

    #[error("cumulative probability did not reach 1 - 1e-12 within {0} support points")]
    Truncation(usize),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Overflow { .. } => 3,
            _ => 2,
        }
    }
}
