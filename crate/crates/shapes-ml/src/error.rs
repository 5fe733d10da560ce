use thiserror::Error;

#[derive(Debug, Error)]
pub enum ShapesError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Tda(#[from] tda_core::TdaError),
    #[error(transparent)]
    Lgz(#[from] lgz::LgzError),
    #[error(transparent)]
    Kernel(#[from] topo_kernel::KernelError),
}

pub type Result<T> = std::result::Result<T, ShapesError>;
