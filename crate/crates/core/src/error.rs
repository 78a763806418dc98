use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not invertible in the coefficient domain: {0}")]
    NotInvertible(String),
    #[error("subspace is not invariant under {0}")]
    NotInvariant(String),
    #[error("no Hecke element found: {0}")]
    HeckeElement(String),
    #[error("eigensystem: {0}")]
    Eigensystem(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
