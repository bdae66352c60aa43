use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are split into input problems (bad vertex labels, wrong kind of
/// ideal, malformed chains) and [`Error::Internal`], which signals that a
/// self-check failed and is never expected on valid input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("at most {max} vertices are supported, got {n}")]
    TooManyVertices { n: usize, max: usize },

    #[error("{0} is not a prime in 2..2^31")]
    InvalidPrime(u64),

    #[error("generator has {got} exponents, expected {expected}")]
    ExponentLength { expected: usize, got: usize },

    #[error("ideal is not squarefree; polarize it first")]
    NotSquarefree,

    #[error("the unit ideal has no Stanley-Reisner complex")]
    UnitIdeal,

    #[error("operation is undefined on the void complex")]
    VoidComplex,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("chain term {0:?} is not a face of the complex of the stated dimension")]
    InvalidChain(Vec<usize>),

    #[error("complex is not a graph on all of [n]: {0}")]
    NotAGraph(String),

    #[error("resolution did not terminate within {0} steps")]
    MaxStepExceeded(usize),

    #[error("resolution is not minimal: {0}")]
    NonMinimal(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
