//! Error taxonomy shared by the library and the CLI.
//!
//! The CLI maps these onto process exit codes: malformed input is 1,
//! capacity limits are 2, and internal verification failures are 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller handed us something structurally unusable (bad vertex index,
    /// impossible parameter combination, missing file, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A text format failed to parse; `line` is 1-based (0 when the problem
    /// is not attributable to a single line).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The instance exceeds a hard size limit of the requested operation.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Two arguments that must agree in length do not.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A numeric quantity that must stay finite did not.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// A solution failed its independent re-check before being reported.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI uses for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Parse { .. } | Error::Io(_) => 1,
            Error::Capacity(_) => 2,
            Error::LengthMismatch { .. } | Error::NonFinite(_) | Error::Verification(_) => 3,
        }
    }
}
