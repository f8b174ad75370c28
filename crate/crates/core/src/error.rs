use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown Cartan type {0:?}")]
    UnknownType(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("Weyl group of order > {0} is not supported")]
    WeylGroupTooLarge(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("subset {0:?} is not stable under the Frobenius")]
    NotSigmaStable(Vec<usize>),
    #[error("({subset:?}, w) is not an alcove pair for this element")]
    NotAlcovePair { subset: Vec<usize> },
    #[error("invalid element literal: {0}")]
    Literal(String),
    #[error("twisted power did not become a translation within {0} steps")]
    NewtonCap(usize),
    #[error("generic class is not unique; maximal classes: {0}")]
    NonUniqueGeneric(String),
    #[error("the Dynkin diagram is not sigma-connected")]
    NotSigmaConnected,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
