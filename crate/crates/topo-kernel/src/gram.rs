//! Gram matrices, the RMSE comparison, and the positive-semidefiniteness
//! check behind the Mercer property.

use nalgebra::DMatrix;

use crate::error::{KernelError, Result};

/// Symmetric m x m kernel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    m: usize,
    entries: Vec<f64>, // row-major
}

impl GramMatrix {
    pub fn from_entries(m: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != m * m {
            return Err(KernelError::InvalidInput(format!(
                "expected {} entries, got {}",
                m * m,
                entries.len()
            )));
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if (entries[i * m + j] - entries[j * m + i]).abs() > 1e-12 {
                    return Err(KernelError::InvalidInput(format!(
                        "asymmetric Gram entry at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { m, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.m + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Restrict to the given indices (training subsets, etc.).
    pub fn submatrix(&self, indices: &[usize]) -> Result<GramMatrix> {
        if indices.iter().any(|&i| i >= self.m) {
            return Err(KernelError::InvalidInput("submatrix index out of range".into()));
        }
        let m = indices.len();
        let mut entries = vec![0.0; m * m];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                entries[a * m + b] = self.get(i, j);
            }
        }
        Ok(GramMatrix { m, entries })
    }
}

/// Evaluate a kernel over all pairs; only the upper triangle is computed
/// and the result is mirrored, so the output is symmetric by construction.
pub fn gram_matrix<T, F>(items: &[T], mut kernel_fn: F) -> Result<GramMatrix>
where
    F: FnMut(&T, &T) -> Result<f64>,
{
    let m = items.len();
    if m == 0 {
        return Err(KernelError::InvalidInput("gram matrix needs at least one item".into()));
    }
    let mut entries = vec![0.0; m * m];
    for i in 0..m {
        for j in i..m {
            let v = kernel_fn(&items[i], &items[j])?;
            if !v.is_finite() {
                return Err(KernelError::InvalidInput(format!(
                    "kernel value at ({i},{j}) is not finite"
                )));
            }
            entries[i * m + j] = v;
            entries[j * m + i] = v;
        }
    }
    Ok(GramMatrix { m, entries })
}

/// Root mean square error between two equally sized Gram matrices:
/// sqrt(sum_ij (a_ij - b_ij)^2 / m^2).
pub fn rmse(a: &GramMatrix, b: &GramMatrix) -> Result<f64> {
    if a.m != b.m {
        return Err(KernelError::InvalidInput(format!(
            "matrix sizes differ: {} vs {}",
            a.m, b.m
        )));
    }
    let sum: f64 = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok((sum / (a.m * a.m) as f64).sqrt())
}

/// Smallest eigenvalue of the (symmetric) Gram matrix and whether it clears
/// the PSD tolerance.
pub fn psd_check(k: &GramMatrix, tol: f64) -> (f64, bool) {
    let m = DMatrix::from_row_slice(k.m, k.m, &k.entries);
    let min_eig = m
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b));
    (min_eig, min_eig >= -tol)
}
