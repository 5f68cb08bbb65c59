//! Error taxonomy shared by every module in the crate.
//!
//! All fallible library operations return [`Result`], whose error type
//! distinguishes bad inputs, text-format violations, hard capacity guards,
//! numerical failures, unsupported parameter regimes, and I/O problems.
//! The CLI maps these variants onto distinct process exit codes.

use thiserror::Error;

/// Unified error type for the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a documented precondition (out-of-range vertex,
    /// inconsistent dimensions, invalid probability, and so on).
    #[error("invalid input: {0}")]
    Input(String),

    /// The text form of a model could not be parsed. Line numbers are
    /// 1-based and refer to the raw input, including comments and blanks.
    #[error("parse error at line {line}: {message}")]
    Parse {
        /// 1-based line number of the offending line.
        line: usize,
        /// Human-readable description of the violation.
        message: String,
    },

    /// The problem size exceeds a hard capacity guard (for example the
    /// qubit ceiling of the statevector oracle).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A numerical procedure failed: a non-finite value appeared where a
    /// finite one is required, or an eigenvalue iteration did not converge.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// A closed-form expression was requested outside its mathematical
    /// domain (for example a logarithm of a non-positive quantity).
    #[error("domain error: {0}")]
    Domain(String),

    /// The supplied parameters fall outside every regime for which a
    /// closed form is available.
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    /// Underlying file I/O failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Builds an [`Error::Numeric`] from anything displayable.
    pub(crate) fn numeric(msg: impl std::fmt::Display) -> Self {
        Error::Numeric(msg.to_string())
    }
}
