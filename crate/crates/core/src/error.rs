use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix has odd dimension {0}")]
    OddDimension(usize),

    #[error("matrix is not antisymmetric (deviation {0:e})")]
    NotAntisymmetric(f64),

    #[error("constraint Jacobian is rank deficient (rank {rank} of {needed})")]
    RankDeficient { rank: usize, needed: usize },

    #[error("tangent space has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("projection did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("point is off the manifold (residual {0:e})")]
    OffManifold(f64),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("point is on or too close to the binding (|f| = {0:e})")]
    NearBinding(f64),

    #[error("degree mismatch: forms have total degree {degree}, ambient dimension is {dim}")]
    DegreeMismatch { degree: usize, dim: usize },

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("simplex budget exceeded: {count} simplices > {budget}")]
    BudgetExceeded { count: usize, budget: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
