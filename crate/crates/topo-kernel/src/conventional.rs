//! Baseline kernels on flattened coordinate vectors.

use crate::error::{KernelError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConventionalKernel {
    /// exp(-gamma ||x - y||_2^2)
    Rbf { gamma: f64 },
    /// exp(-gamma ||x - y||_1)
    Laplacian { gamma: f64 },
    /// (x . y + 1)^degree
    Polynomial { degree: u32 },
}

impl ConventionalKernel {
    pub fn name(&self) -> &'static str {
        match self {
            ConventionalKernel::Rbf { .. } => "rbf",
            ConventionalKernel::Laplacian { .. } => "laplacian",
            ConventionalKernel::Polynomial { .. } => "polynomial",
        }
    }

    pub fn hyperparameter(&self) -> f64 {
        match *self {
            ConventionalKernel::Rbf { gamma } | ConventionalKernel::Laplacian { gamma } => gamma,
            ConventionalKernel::Polynomial { degree } => degree as f64,
        }
    }

    pub fn evaluate(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        if x.len() != y.len() {
            return Err(KernelError::InvalidInput(format!(
                "vector lengths differ: {} vs {}",
                x.len(),
                y.len()
            )));
        }
        Ok(match *self {
            ConventionalKernel::Rbf { gamma } => {
                let sq: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
                (-gamma * sq).exp()
            }
            ConventionalKernel::Laplacian { gamma } => {
                let l1: f64 = x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum();
                (-gamma * l1).exp()
            }
            ConventionalKernel::Polynomial { degree } => {
                let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
                (dot + 1.0).powi(degree as i32)
            }
        })
    }
}
