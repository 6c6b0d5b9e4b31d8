use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("non-finite values in {0}")]
    NonFinite(String),

    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("{method} did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("rank deficient input at index {index} (relative residual {residual:.3e})")]
    RankDeficient { index: usize, residual: f64 },

    #[error("operator is not naturally self-adjoint: deviation {deviation:.3e} exceeds {tol:.3e}")]
    NotSelfAdjoint { deviation: f64, tol: f64 },

    #[error("cross-check failed for {what}: paths differ by {gap:.3e}")]
    CrossCheck { what: &'static str, gap: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
