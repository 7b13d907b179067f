use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("ideal is not strongly stable")]
    NotStronglyStable,

    #[error("ideal must be neither zero nor the unit ideal")]
    DegenerateIdeal,

    #[error("monomial of degree {degree} does not fit a grid with {cols} columns")]
    DegreeExceedsGrid { degree: u32, cols: usize },

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("irreducible component {0} is not of the form (x_{{1,g1}}, ..., x_{{t,gt}}) with g1 <= ... <= gt")]
    NotInitialSegment(String),

    #[error("oracle size bound exceeded: {generators} generators (limit {limit})")]
    OracleTooLarge { generators: usize, limit: usize },

    #[error("quotient ring is not Cohen-Macaulay")]
    NotCohenMacaulay,

    #[error("invalid component: {0}")]
    InvalidComponent(String),

    #[error("invalid corpus specification: {0}")]
    InvalidSpec(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}
