use thiserror::Error;

/// Errors produced by the TDA core operations.
#[derive(Debug, Error)]
pub enum TdaError {
    /// A caller-supplied value violated a precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An input structure violated an invariant (e.g. downward closure).
    #[error("structural error: {0}")]
    Structural(String),
    /// The requested computation exceeds a configured resource guard.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, TdaError>;
