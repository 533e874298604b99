use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("containment violated: {0}")]
    Containment(String),

    #[error("not a chain map: {0}")]
    ChainMap(String),

    #[error("exactness violated: {0}")]
    Exactness(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),

    #[error("not a subalgebra: {0}")]
    Subalgebra(String),

    #[error("not a two-sided ideal: {0}")]
    Ideal(String),

    #[error("size budget exceeded: {what} needs {dim} coordinates, budget is {budget}")]
    SizeBudget { what: String, dim: u128, budget: usize },

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("connecting map assembly failed: {0}")]
    Assembly(String),

    #[error("parse error: {0}")]
    Parse(String),
}
