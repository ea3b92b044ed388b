use alloc::string::String;
use core::fmt;

use crate::group::DualLabel;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(String),
    /// Inconsistent numerical parameters (for instance `h' <= h`).
    Parameter(String),
    /// A precondition on the inputs does not hold (grid / band-limit mismatch).
    Precondition(String),
    DimensionMismatch { expected: usize, found: usize },
    Unsupported(String),
    /// No witness for the Young-conjugate inequality was found in the sweep.
    SearchFailure { best_defect: f64 },
    InsufficientData(String),
    Estimation(String),
    /// Compactly supported members require a non-quasianalytic class.
    Quasianalytic(String),
    Coverage { pieces: usize, required: usize },
    Conditioning { label: DualLabel, min_eigenvalue: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Parameter(msg) => write!(f, "parameter error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::SearchFailure { best_defect } => {
                write!(f, "no inequality witness found (best defect {best_defect:e})")
            }
            Error::InsufficientData(msg) => write!(f, "insufficient data: {msg}"),
            Error::Estimation(msg) => write!(f, "estimation failed: {msg}"),
            Error::Quasianalytic(msg) => write!(f, "quasianalytic class rejected: {msg}"),
            Error::Coverage { pieces, required } => write!(
                f,
                "{pieces} pieces cannot cover the circle, at least {required} are needed"
            ),
            Error::Conditioning { label, min_eigenvalue } => write!(
                f,
                "coefficient matrix at {label} is numerically singular (min eigenvalue {min_eigenvalue:e})"
            ),
        }
    }
}

impl core::error::Error for Error {}
