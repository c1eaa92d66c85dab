use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("singular matrix: pivot magnitude below threshold in column {column}")]
    SingularMatrix { column: usize },

    #[error("degenerate simplex: {0}")]
    DegenerateSimplex(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension {dim} exceeds supported bound {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("no Hadamard matrix of order {0} via Sylvester or Paley I")]
    UnsupportedOrder(usize),

    #[error("failed to generate a nondegenerate simplex after {0} retries")]
    GenerationFailed(usize),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("search iterate value {value} fell below the proven lower bound {bound}")]
    LowerBoundViolated { value: f64, bound: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
