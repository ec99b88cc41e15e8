use hhx_core::{HochschildError, LinAlgError, MeasuringError};
use thiserror::Error;

/// Exit status for a run that completed but found a failed check.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for unusable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{kind} `{name}` referenced by {from} is not defined")]
    UnresolvedReference { kind: &'static str, name: String, from: String },
    #[error("unknown basis name `{name}`; expected one of {}", available.join(", "))]
    UnknownBasisName { name: String, available: Vec<String> },
    #[error("bad t-expression `{expr}` at offset {offset}: {message}")]
    TExpression { expr: String, offset: usize, message: String },
    #[error("degree {requested} needs --truncation {} or more, but `{space}` is truncated at {truncation}", requested + 1)]
    TruncationTooShallow { space: String, requested: usize, truncation: usize },
    #[error("invalid {what} `{name}`: {message}")]
    Invalid { what: &'static str, name: String, message: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

impl CliError {
    /// Every error is an input problem; computations that finish but fail a
    /// check are reported through [`crate::Outcome`] instead.
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }

    pub(crate) fn invalid(what: &'static str, name: &str, err: impl std::fmt::Display) -> Self {
        CliError::Invalid { what, name: name.to_string(), message: err.to_string() }
    }
}

impl From<LinAlgError> for CliError {
    fn from(e: LinAlgError) -> Self {
        CliError::Hochschild(e.into())
    }
}

impl From<MeasuringError> for CliError {
    fn from(e: MeasuringError) -> Self {
        CliError::Hochschild(e.into())
    }
}
