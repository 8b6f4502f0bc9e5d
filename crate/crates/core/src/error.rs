use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported dimension m = {m} (supported: {supported})")]
    UnsupportedDimension { m: usize, supported: &'static str },

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("eps = {eps} is not an integer multiple of the grid spacing h = {h}")]
    Alignment { eps: f64, h: f64 },

    #[error("problem too large: {0}")]
    Scale(String),

    #[error("{what} is only valid for {valid}, got {value}")]
    OutOfValidity { what: &'static str, valid: &'static str, value: f64 },

    #[error("numeric failure in {what}: {detail}")]
    NumericFailure { what: &'static str, detail: String },

    #[error("dimension mismatch: domain has m = {domain}, constants have m = {constants}")]
    DimensionMismatch { domain: usize, constants: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument { name, reason: reason.into() }
    }

    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NumericFailure { .. } | Error::Invariant(_))
    }
}
