use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid discriminant {value}: {reason}")]
    InvalidDiscriminant { value: String, reason: &'static str },

    #[error("discriminant mismatch: {left} vs {right}")]
    DiscriminantMismatch { left: String, right: String },

    #[error("division by zero in Q(sqrt(D))")]
    DivisionByZero,

    #[error("matrix [{0}] is not unimodular (determinant must be 1)")]
    NotUnimodular(String),

    #[error("form {0} is not projective (Hessian is not primitive)")]
    NotProjective(String),

    #[error("degenerate basis: elements are linearly dependent over Q")]
    DegenerateBasis,

    #[error("basis does not span a module over the quadratic order")]
    NotAnIdeal,

    #[error("element {0} is not in the module")]
    NotInModule(String),

    #[error("pair is not balanced: {0}")]
    UnbalancedPair(String),

    #[error("no class found for {0}: the table exceeded its class limit; raise the search depth")]
    ClassNotFound(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
