use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus not prime: {0}")]
    NotPrime(u64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("the zero algebra is not allowed (unit = 0)")]
    ZeroAlgebra,

    #[error("invalid {what}: {report}")]
    Invalid { what: &'static str, report: ValidationReport },

    #[error("element {element:?} of the subring is moved by alpha at group index {sigma}")]
    NotInvariant { sigma: usize, element: Vec<u64> },

    #[error("{0} requires a commutative algebra")]
    NonCommutative(&'static str),

    #[error("not a central idempotent: {0}")]
    NotCentralIdempotent(String),

    #[error("element does not lie in the expected subspace: {0}")]
    NotInSubspace(String),

    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("semantic error at {pointer}: {message}")]
    Semantic { pointer: String, message: String },

    #[error("report carries no verdicts")]
    EmptyReport,

    #[error("unknown command: {0}")]
    UnknownCommand(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn semantic(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Semantic { pointer: pointer.into(), message: message.into() }
    }

    /// Stable machine-readable tag for each error class.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "modulus_not_prime",
            Error::Shape(_) => "shape",
            Error::ZeroAlgebra => "zero_algebra",
            Error::Invalid { .. } => "invalid",
            Error::NotInvariant { .. } => "not_invariant",
            Error::NonCommutative(_) => "non_commutative",
            Error::NotCentralIdempotent(_) => "not_central_idempotent",
            Error::NotInSubspace(_) => "not_in_subspace",
            Error::Consistency(_) => "consistency",
            Error::Syntax(_) => "syntax",
            Error::Semantic { .. } => "semantic",
            Error::EmptyReport => "empty_report",
            Error::UnknownCommand(_) => "unknown_command",
            Error::Io(_) => "io",
        }
    }
}
