use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not antisymmetric (max |w + w^T| = {0:e})")]
    NotAntisymmetric(f64),
    #[error("matrix is not symmetric (max |v - v^T| = {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not Hermitian (max |a - a^dag| = {0:e})")]
    NotHermitian(f64),
    #[error("pfaffian of an odd-dimensional matrix")]
    OddDimension,
    #[error("single-particle dimension {0} is odd")]
    DimensionNotEven(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("contraction has {got} operands, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("threshold {0} outside (0, 1)")]
    ThresholdOutOfRange(f64),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported system: {0}")]
    UnsupportedSystem(String),
    #[error("wrong state kind: {0}")]
    WrongKind(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("not a density matrix: {0}")]
    NotAState(String),
    #[error("polynomial system is degenerate: {0}")]
    DegenerateSystem(String),
    #[error("vector not in the range of the density matrix (residual {0:e})")]
    NotInRange(f64),
    #[error("state is not an edge state (infimum {0:e})")]
    NotAnEdgeState(f64),
    #[error("operator and state live on different spaces")]
    SpaceMismatch,
    #[error("bad mode partition: {0}")]
    BadPartition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
