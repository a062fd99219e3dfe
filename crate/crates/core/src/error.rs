use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("n = {n} exceeds the exact-computation cap {cap} (pass --unsafe-nmax to override)")]
    ExactCapExceeded { n: u64, cap: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("Laurent row is not symmetric under m -> -m at m = {0}")]
    Asymmetric(i64),

    #[error("z^0 coefficient of the false theta expansion is {0}, expected 0")]
    InconsistentExpansion(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
