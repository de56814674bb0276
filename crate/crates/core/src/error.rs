//! Error types shared across the crate.

use alloc::string::String;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input fell outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Too few observations for the requested computation.
    #[error("insufficient data: need at least {required}, got {available}")]
    InsufficientData { required: usize, available: usize },

    /// Two series that must align have different lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A series that must vary is constant.
    #[error("zero variance in `{0}`")]
    ZeroVariance(String),

    /// A non-finite value reached a numeric routine.
    #[error("non-finite value in `{0}`")]
    NonFinite(String),

    /// The design matrix is rank deficient; `column` names the first
    /// offending term.
    #[error("singular design: column `{column}` is collinear with earlier columns")]
    SingularDesign { column: String },

    /// A model specification violated its own invariants.
    #[error("invalid model spec: {0}")]
    InvalidSpec(String),

    /// An iterative routine failed to converge within its cap.
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },
}
