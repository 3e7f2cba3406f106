use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex index {index} out of range for {size} vertices")]
    VertexOutOfRange { index: usize, size: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("not a partition of the vertex set: {0}")]
    NotAPartition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
