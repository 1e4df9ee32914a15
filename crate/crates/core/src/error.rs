use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("horizon must be at least 1, got {0}")]
    InvalidHorizon(usize),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid transition: {0}")]
    InvalidTransition(String),

    #[error("step {index} is out of range 0..={horizon}")]
    IndexOutOfRange { index: usize, horizon: usize },

    #[error("rate of return is undefined for generation {0}")]
    UndefinedReturn(usize),

    #[error("debt interest must be zero for {0}")]
    DebtInterestNotSupported(&'static str),

    #[error("mismatched specs: {0}")]
    MismatchedSpecs(String),

    #[error("operation requires System {expected}, got System {actual}")]
    WrongSystem {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("cannot parse rational `{input}`: {reason}")]
    ParseRational { input: String, reason: String },
}
