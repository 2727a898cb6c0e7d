use thiserror::Error;

use crate::technology::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    Dimension {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid technology parameters: {0}")]
    InvalidParams(ValidationReport),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index {index} out of range for {len} outputs")]
    IndexOutOfRange { index: usize, len: usize },

    /// A branch that the monotonicity/convexity assumptions rule out was reached.
    #[error("contract violation: {0}")]
    ContractViolation(String),
}

pub(crate) fn check_len(context: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension {
            context,
            expected,
            actual,
        })
    }
}
