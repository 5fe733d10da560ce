use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("betti backend failed: {0}")]
    Backend(String),
    #[error(transparent)]
    Tda(#[from] tda_core::TdaError),
}

pub type Result<T> = std::result::Result<T, KernelError>;
