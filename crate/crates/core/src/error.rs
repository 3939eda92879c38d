use thiserror::Error;

/// Errors raised across the library. Each variant names the contract that
/// was broken so that callers (and the CLI exit-code mapping) can tell input
/// problems apart from exhausted search budgets.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unavailable: {0}")]
    Unavailable(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("enumeration error: {0}")]
    Enumeration(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
