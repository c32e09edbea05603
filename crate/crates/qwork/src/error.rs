use thiserror::Error;

/// Errors produced by validation gates and parameter checks.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Matrix is not Hermitian within the relative tolerance.
    #[error("matrix is not Hermitian: ||M - M^dag||_F = {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    Hermiticity { deviation: f64, tolerance: f64 },

    /// Matrix is not unitary within tolerance.
    #[error("matrix is not unitary: ||U^dag U - I||_F = {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    Unitarity { deviation: f64, tolerance: f64 },

    /// Operator dimensions do not match.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Param(String),

    /// The operation is only defined at desk scale.
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    /// A computed object violates one of its numeric invariants.
    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
