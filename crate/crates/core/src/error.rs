use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("weight matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("negative weight at ({row}, {col})")]
    NegativeWeight { row: usize, col: usize },

    #[error("expected an unweighted ({{0,1}}) graph: {0}")]
    Weighted(String),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial has a negative coefficient")]
    NegativeCoefficient,

    #[error("polynomial degree {0} is below the supported minimum of 2")]
    DegreeTooLow(usize),

    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: usize, found: usize },

    #[error("variable index {index} out of range for {n_vars} variables")]
    IndexOutOfRange { index: usize, n_vars: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
