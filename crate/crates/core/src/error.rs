use thiserror::Error;

/// Errors shared across the workspace.
///
/// `InvalidInput` and `Parse` map to the CLI input-error exit code,
/// `BudgetExceeded` and `Numeric` to the resource-error exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("resource budget exceeded: {what} needs {required} enumerations, limit is {limit}")]
    BudgetExceeded {
        what: String,
        required: u128,
        limit: u64,
    },

    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors that should surface as resource exhaustion rather
    /// than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::Numeric(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
