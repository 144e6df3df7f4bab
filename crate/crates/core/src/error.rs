use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: equation is not homogeneous (right-hand side is {rhs})")]
    Nonhomogeneous { line: usize, rhs: BigInt },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("constraint {index} has an all-zero coefficient vector")]
    ZeroConstraint { index: usize },

    /// The quotient F_A / (K ∩ F_A) is not free. `witness` is an element of
    /// the ambient free group whose image has finite order `order`.
    #[error("quotient has torsion: element {witness:?} has order {order}")]
    TorsionFound { order: BigInt, witness: Vec<BigInt> },

    /// Some generators are sent to zero by the projection onto the quotient.
    #[error("generators {indices:?} have zero image in the quotient")]
    ZeroImage { indices: Vec<usize> },

    #[error("constraint {index} lies in the lattice spanned by the earlier constraints")]
    FiltrationViolation { index: usize },

    #[error("exact search is limited to {bound} equations, system has {equations}")]
    SearchBoundExceeded { bound: usize, equations: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for the errors that mean a hypothesis of the filtration pipeline
    /// does not hold for the given input (as opposed to malformed input).
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::TorsionFound { .. } | Error::ZeroImage { .. } | Error::FiltrationViolation { .. }
        )
    }
}
