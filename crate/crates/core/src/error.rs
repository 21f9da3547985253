use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
    #[error("representations live over different quivers")]
    QuiverMismatch,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("quiver has a directed cycle")]
    CyclicQuiver,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("intertwining law fails at arrow `{0}`")]
    NotAMorphism(String),
    #[error("the zero representation has no such property")]
    ZeroRepresentation,
    #[error("subspace is not contained in the ambient span")]
    NotContained,
    #[error("unsupported quiver shape: {0}")]
    UnsupportedShape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration of {size} elements exceeds the cap {cap}")]
    CapExceeded { size: u128, cap: u64 },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
