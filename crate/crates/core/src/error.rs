use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a Cartan matrix: {0}")]
    NonCartan(String),
    #[error("D*C is not symmetric for the given symmetrizer")]
    NotSymmetrizer,
    #[error("bad orientation: {0}")]
    BadOrientation(String),
    #[error("operation requires affine type (got {0})")]
    NotAffine(String),
    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),
    #[error("vertex {0} is not a sink")]
    NotSink(usize),
    #[error("extended vertex {0} does not leave a finite type complement")]
    BadExtendedVertex(usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("Laurent property violated: {0}")]
    NotLaurent(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("rank vector left the positive cone: {0:?}")]
    NegativeRank(Vec<i64>),
    #[error("no canonical decomposition found for {0:?}")]
    DecompositionNotFound(Vec<i64>),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("reflection result is not locally free at vertex {0}")]
    NotLocallyFreeResult(usize),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("interpolation inconsistent: {0}")]
    InterpolationInconsistent(String),
    #[error("invariant breach: {0}")]
    Invariant(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
