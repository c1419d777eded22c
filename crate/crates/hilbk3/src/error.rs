//! Error type shared by all modules.

use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A series or row has no inverse.
    #[error("not invertible: {0}")]
    NotInvertible(String),
    /// A result needs more `q`-orders than were supplied.
    #[error("insufficient precision: {0}")]
    NeedsPrecision(String),
    /// An argument is outside the supported range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// The recursion met a singular pivot.
    #[error("degenerate pivot at (d, k) = ({d}, {k})")]
    DegeneratePivot {
        /// The `q`-degree.
        d: i64,
        /// The `y`-degree.
        k: i64,
    },
    /// A structure series outside the implemented range was needed.
    #[error("missing structure series phi_({m},{l})")]
    MissingPhi {
        /// First index.
        m: i64,
        /// Second index.
        l: i64,
    },
    /// No combination of the requested generators matches.
    #[error("no representation: {0}")]
    NoRepresentation(String),
    /// The data do not determine a unique answer.
    #[error("underdetermined: {0}")]
    Underdetermined(String),
    /// An identity check failed.
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
