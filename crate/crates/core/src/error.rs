use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system {0}")]
    UnsupportedType(String),
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("root does not belong to this root system")]
    SystemMismatch,
    #[error("{0:?} is not in the coroot lattice")]
    NotInCorootLattice(Vec<i64>),
    #[error("word is not reduced at position {0}")]
    NotReduced(usize),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("subword oracle cap exceeded ({0} letters)")]
    OracleCapExceeded(usize),
    #[error("{0} is not an ascent")]
    NotAnAscent(String),
    #[error("operation requires type {expected}, got {got}")]
    WrongType { expected: String, got: String },
    #[error("element is not I-minimal")]
    NotIMinimal,
    #[error("parabolic subgroup for the given node set is infinite")]
    InfiniteParabolic,
    #[error("integer overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
