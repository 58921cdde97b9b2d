use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BohrError {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation is not defined for this input (e.g. a pointwise bound for a family that only has a sum bound).
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    /// A coefficient or an intermediate value is NaN or infinite.
    #[error("non-finite value: {0}")]
    NonFinite(String),
    /// Point evaluation failed (division by a vanishing quantity).
    #[error("evaluation error: {0}")]
    Evaluation(String),
    /// A bracketing root search could not establish a sign change.
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    /// Malformed text input (replay lines, tags).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, BohrError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(BohrError::Domain(msg.into()))
}
