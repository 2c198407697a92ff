use thiserror::Error;

use crate::report::ValidationReport;

/// Errors raised by the library layer.
///
/// Axiom violations found while *validating* data are reported as
/// [`ValidationReport`]s, not errors; errors are reserved for malformed
/// input and for broken invariants that make an operation meaningless.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("slot {slot} out of range for a rank-{rank} tensor")]
    SlotOutOfRange { slot: usize, rank: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("scalars from different fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid structure: {0}")]
    InvalidStructure(ValidationReport),
    #[error("element is not a unit of A(x)A: t * t_inv != 1(x)1")]
    NotAUnit,
    #[error("search space of {candidates} candidates exceeds the bound {bound}")]
    BoundExceeded { candidates: String, bound: u64 },
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("closed-form inverse of H^v does not match the matrix inverse")]
    InverseMismatch,
    #[error("module axiom violated: {0}")]
    ModuleAxiomViolation(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
