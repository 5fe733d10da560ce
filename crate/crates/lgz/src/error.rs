use thiserror::Error;

#[derive(Debug, Error)]
pub enum LgzError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error(transparent)]
    Tda(#[from] tda_core::TdaError),
    #[error(transparent)]
    Qsim(#[from] qsim::QsimError),
}

pub type Result<T> = std::result::Result<T, LgzError>;
