use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A matrix or state is larger than the kernel supports.
    #[error("size {size} exceeds the limit of {limit} for {what}")]
    Size {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// The root solver did not reach its residual target.
    #[error("root solver failed to converge after {iterations} iterations (worst residual {worst_residual:e})")]
    Convergence {
        iterations: usize,
        roots: Vec<Complex64>,
        residuals: Vec<f64>,
        worst_residual: f64,
    },

    /// A quantity that must be real and non-negative came out otherwise.
    #[error("numerical inconsistency: {0}")]
    Numerical(String),

    /// Input violates one or more type invariants.
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
}
