use thiserror::Error;

/// Errors raised by field, matrix, construction and module computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no square root of {0} in the field")]
    NoSquareRootInField(String),
    #[error("field has no primitive fourth root of unity")]
    NoPrimitiveFourthRoot,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
    #[error("twist to the other double cover is undefined in characteristic 2")]
    TwistUndefined,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal chain mismatch: {0}")]
    InternalChainMismatch(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("input is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
