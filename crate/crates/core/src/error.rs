use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("invalid generator or index: {0}")]
    Alphabet(String),
    #[error("element is not invariant under the Cartan subalgebra: {0}")]
    NotInvariant(String),
    #[error("depth error: {0}")]
    Depth(String),
    #[error("unsupported family: {0}")]
    Family(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("degenerate random assignment: {0}")]
    DegenerateAssignment(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
