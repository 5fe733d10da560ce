use thiserror::Error;

#[derive(Debug, Error)]
pub enum QsimError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, QsimError>;
