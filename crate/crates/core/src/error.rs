use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("series too short: need at least {needed} observations, got {got}")]
    SeriesTooShort { needed: usize, got: usize },

    #[error("degenerate regression: {0}")]
    DegenerateRegression(&'static str),

    #[error("{0} is undefined for a constant series")]
    ConstantSeries(&'static str),

    #[error("not enough lags: need {needed}, have {got}")]
    InsufficientLags { needed: usize, got: usize },

    #[error("empty input")]
    Empty,

    #[error("unknown {kind} `{value}`")]
    Unknown { kind: &'static str, value: String },

    #[error("spec line {line}: {reason}")]
    SpecParse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(name: &'static str, reason: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter {
        name,
        reason: reason.into(),
    })
}
