//! Soft-margin SVM on a precomputed Gram matrix, trained by pairwise
//! coordinate ascent on the dual (maximal-violating-pair selection).

use topo_kernel::GramMatrix;

use crate::error::{Result, ShapesError};

#[derive(Debug, Clone)]
pub struct SvmModel {
    alphas: Vec<f64>,
    bias: f64,
    labels: Vec<f64>,
    c: f64,
    converged: bool,
    iterations: usize,
}

impl SvmModel {
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Indices with alpha > 0.
    pub fn support_indices(&self) -> Vec<usize> {
        self.alphas
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Dual objective sum(alpha) - 1/2 sum alpha_i alpha_j y_i y_j K_ij.
    pub fn dual_objective(&self, gram: &GramMatrix) -> f64 {
        let n = self.alphas.len();
        let mut quad = 0.0;
        for i in 0..n {
            if self.alphas[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                quad += self.alphas[i]
                    * self.alphas[j]
                    * self.labels[i]
                    * self.labels[j]
                    * gram.get(i, j);
            }
        }
        self.alphas.iter().sum::<f64>() - 0.5 * quad
    }

    /// Decision value for a test point given its kernel row against the
    /// training set.
    pub fn decision_value(&self, kernel_row: &[f64]) -> Result<f64> {
        if kernel_row.len() != self.alphas.len() {
            return Err(ShapesError::InvalidInput(format!(
                "kernel row has {} entries, training size is {}",
                kernel_row.len(),
                self.alphas.len()
            )));
        }
        let acc: f64 = self
            .alphas
            .iter()
            .zip(&self.labels)
            .zip(kernel_row)
            .map(|((a, y), k)| a * y * k)
            .sum();
        Ok(acc + self.bias)
    }
}

fn validate_labels(labels: &[f64]) -> Result<()> {
    if labels.iter().any(|&y| y != 1.0 && y != -1.0) {
        return Err(ShapesError::InvalidInput("labels must be +-1".into()));
    }
    Ok(())
}

/// Train on the Gram matrix restricted to the training set.
pub fn svm_train(
    gram: &GramMatrix,
    labels: &[f64],
    c: f64,
    tol: f64,
    max_iter: usize,
) -> Result<SvmModel> {
    let n = labels.len();
    if gram.m() != n {
        return Err(ShapesError::InvalidInput(format!(
            "gram is {}x{} but there are {n} labels",
            gram.m(),
            gram.m()
        )));
    }
    validate_labels(labels)?;
    if !(c > 0.0) {
        return Err(ShapesError::InvalidInput(format!("C must be > 0, got {c}")));
    }

    let mut alphas = vec![0.0f64; n];
    // f[i] = sum_j alpha_j y_j K_ij
    let mut f = vec![0.0f64; n];
    let mut converged = false;
    let mut iterations = 0;
    let mut bias = 0.0;

    for iter in 0..max_iter {
        iterations = iter + 1;
        // maximal violating pair over (y_i - f_i)
        let mut up: Option<(usize, f64)> = None;
        let mut low: Option<(usize, f64)> = None;
        for i in 0..n {
            let v = labels[i] - f[i];
            let in_up = (labels[i] > 0.0 && alphas[i] < c) || (labels[i] < 0.0 && alphas[i] > 0.0);
            let in_low = (labels[i] > 0.0 && alphas[i] > 0.0) || (labels[i] < 0.0 && alphas[i] < c);
            if in_up && up.map_or(true, |(_, best)| v > best) {
                up = Some((i, v));
            }
            if in_low && low.map_or(true, |(_, best)| v < best) {
                low = Some((i, v));
            }
        }
        let (Some((i, m_up)), Some((j, m_low))) = (up, low) else { break };
        bias = (m_up + m_low) / 2.0;
        if m_up - m_low <= tol {
            converged = true;
            break;
        }

        let eta = (gram.get(i, i) + gram.get(j, j) - 2.0 * gram.get(i, j)).max(1e-12);
        // two-variable update keeping sum(alpha * y) fixed
        let (yi, yj) = (labels[i], labels[j]);
        let (ei, ej) = (f[i] - yi, f[j] - yj);
        let (lo, hi) = if yi != yj {
            ((alphas[j] - alphas[i]).max(0.0), (c + alphas[j] - alphas[i]).min(c))
        } else {
            ((alphas[i] + alphas[j] - c).max(0.0), (alphas[i] + alphas[j]).min(c))
        };
        let mut aj_new = alphas[j] + yj * (ei - ej) / eta;
        aj_new = aj_new.clamp(lo, hi);
        let ai_new = alphas[i] + yi * yj * (alphas[j] - aj_new);
        let (di, dj) = (ai_new - alphas[i], aj_new - alphas[j]);
        if di.abs() < 1e-15 && dj.abs() < 1e-15 {
            converged = true;
            break;
        }
        alphas[i] = ai_new;
        alphas[j] = aj_new;
        for k in 0..n {
            f[k] += yi * di * gram.get(i, k) + yj * dj * gram.get(j, k);
        }
    }

    Ok(SvmModel { alphas, bias, labels: labels.to_vec(), c, converged, iterations })
}

/// Classify from a kernel row; an exact zero decision value maps to +1.
pub fn svm_predict(model: &SvmModel, kernel_row: &[f64]) -> Result<i8> {
    Ok(if model.decision_value(kernel_row)? >= 0.0 { 1 } else { -1 })
}
