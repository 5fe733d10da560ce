//! Multivariate Betti curves: the (k_max+1) x (q+1) matrix with entry
//! (i, j) holding the order-i Betti number of the complex at threshold j.

use tda_core::{
    filtration_betti_curves, DistanceMatrix, Filtration, RankBackend, SimplicialComplex,
    ThresholdSequence,
};

use crate::error::{KernelError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BettiCurveMatrix {
    k_max: usize,
    thresholds: ThresholdSequence,
    /// rows[k][j] = beta_k at threshold j; exact backends store integers,
    /// estimator backends store real estimates.
    values: Vec<Vec<f64>>,
}

impl BettiCurveMatrix {
    pub fn new(k_max: usize, thresholds: ThresholdSequence, values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() != k_max + 1 {
            return Err(KernelError::InvalidInput(format!(
                "expected {} rows, got {}",
                k_max + 1,
                values.len()
            )));
        }
        for (k, row) in values.iter().enumerate() {
            if row.len() != thresholds.len() {
                return Err(KernelError::InvalidInput(format!(
                    "row {k} has {} columns but the grid has {}",
                    row.len(),
                    thresholds.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(KernelError::InvalidInput(format!("row {k} has a negative entry")));
            }
        }
        Ok(Self { k_max, thresholds, values })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn thresholds(&self) -> &ThresholdSequence {
        &self.thresholds
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn get(&self, k: usize, j: usize) -> f64 {
        self.values[k][j]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|row| row.iter())
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    pub fn same_grid(&self, other: &BettiCurveMatrix) -> bool {
        self.k_max == other.k_max && self.thresholds == other.thresholds
    }
}

/// Assemble the curve matrix by evaluating `betti_fn(complex, k)` on every
/// filtration stage. The backend decides the semantics: exact homology
/// yields integers, an estimator yields reals in [0, |Cl_k|].
pub fn betti_curve_matrix<F>(
    filtration: &Filtration,
    k_max: usize,
    mut betti_fn: F,
) -> Result<BettiCurveMatrix>
where
    F: FnMut(&SimplicialComplex, usize) -> Result<f64>,
{
    let mut values = vec![vec![0.0; filtration.len()]; k_max + 1];
    for (j, complex) in filtration.complexes().iter().enumerate() {
        for (k, row) in values.iter_mut().enumerate() {
            row[j] = betti_fn(complex, k)?;
        }
    }
    BettiCurveMatrix::new(k_max, filtration.thresholds().clone(), values)
}

/// Exact classical curve matrix straight from a distance matrix, using the
/// incremental filtration rank engine (one column reduction per simplex
/// across the whole grid).
pub fn exact_betti_curve_matrix(
    dm: &DistanceMatrix,
    thresholds: &ThresholdSequence,
    k_max: usize,
    backend: RankBackend,
) -> Result<BettiCurveMatrix> {
    let curves = filtration_betti_curves(dm, thresholds, k_max, backend)?;
    let values = curves
        .into_iter()
        .map(|row| row.into_iter().map(|v| v as f64).collect())
        .collect();
    BettiCurveMatrix::new(k_max, thresholds.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tda_core::{
        betti_exact, distance_matrix, threshold_sequence, vr_filtration, PointCloud,
    };

    fn square_dm() -> DistanceMatrix {
        let c = PointCloud::new(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        distance_matrix(&c)
    }

    #[test]
    fn square_exact_matrix() {
        let ts = ThresholdSequence::new(vec![0.0, 1.2, 1.5]).unwrap();
        let m = exact_betti_curve_matrix(&square_dm(), &ts, 1, RankBackend::Rational).unwrap();
        assert_eq!(m.values()[0], vec![4.0, 1.0, 1.0]);
        assert_eq!(m.values()[1], vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn single_point_all_ones_row() {
        let c = PointCloud::new(vec![vec![0.5, 0.5]]).unwrap();
        let dm = distance_matrix(&c);
        let ts = ThresholdSequence::new(vec![0.0, 1.0, 2.0]).unwrap();
        let m = exact_betti_curve_matrix(&dm, &ts, 1, RankBackend::Rational).unwrap();
        assert_eq!(m.values()[0], vec![1.0, 1.0, 1.0]);
        assert_eq!(m.values()[1], vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn closure_backend_matches_fast_path() {
        let dm = square_dm();
        let ts = threshold_sequence(std::slice::from_ref(&dm), 1e-9).unwrap();
        let fast = exact_betti_curve_matrix(&dm, &ts, 2, RankBackend::Rational).unwrap();
        let filtration = vr_filtration(&dm, &ts, 2).unwrap();
        let slow = betti_curve_matrix(&filtration, 2, |s, k| {
            Ok(betti_exact(s, k, RankBackend::Rational)?.value as f64)
        })
        .unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn column_zero_counts_points() {
        let dm = square_dm();
        let ts = threshold_sequence(std::slice::from_ref(&dm), 1e-9).unwrap();
        let m = exact_betti_curve_matrix(&dm, &ts, 2, RankBackend::Rational).unwrap();
        assert_eq!(m.get(0, 0), 4.0);
        assert_eq!(m.get(1, 0), 0.0);
        assert_eq!(m.get(2, 0), 0.0);
        // connected at the largest threshold: beta_0 = 1
        let last = ts.len() - 1;
        assert_eq!(m.get(0, last), 1.0);
    }
}
