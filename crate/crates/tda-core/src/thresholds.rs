//! Shared threshold grids for filtrations.

use crate::cloud::DistanceMatrix;
use crate::error::{Result, TdaError};

/// Strictly increasing sequence of filtration thresholds starting at 0.
///
/// A curve distance between two Betti curves is only defined when both were
/// computed on the same grid, so experiment drivers build one shared
/// sequence for a whole dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSequence {
    values: Vec<f64>,
}

impl ThresholdSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(TdaError::InvalidInput("threshold sequence must be nonempty".into()));
        }
        if values[0] != 0.0 {
            return Err(TdaError::InvalidInput("first threshold must be 0".into()));
        }
        for w in values.windows(2) {
            if !(w[1] > w[0]) {
                return Err(TdaError::InvalidInput(format!(
                    "thresholds must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(TdaError::InvalidInput("non-finite threshold".into()));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the first threshold `>= diameter`, i.e. the filtration stage
    /// at which a simplex of the given diameter appears. `None` when the
    /// diameter exceeds every threshold.
    pub fn appearance_index(&self, diameter: f64) -> Option<usize> {
        let idx = self.values.partition_point(|&t| t < diameter);
        (idx < self.values.len()).then_some(idx)
    }
}

/// Build the shared threshold grid for a set of distance matrices: the
/// sorted union of all strictly positive pairwise distances, deduplicated
/// within absolute tolerance `tol`, with 0 prepended.
pub fn threshold_sequence(dms: &[DistanceMatrix], tol: f64) -> Result<ThresholdSequence> {
    if !(tol > 0.0) {
        return Err(TdaError::InvalidInput(format!("tol must be > 0, got {tol}")));
    }
    let mut distances: Vec<f64> = dms
        .iter()
        .flat_map(|dm| dm.upper_triangle())
        .filter(|&d| d > 0.0)
        .collect();
    distances.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
    let mut values = vec![0.0];
    for d in distances {
        if d - values.last().unwrap() > tol {
            values.push(d);
        }
    }
    ThresholdSequence::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloud::{distance_matrix, PointCloud};

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
    fn sorted_dedup_union() {
        let dm = square_dm();
        let ts = threshold_sequence(&[dm], 1e-9).unwrap();
        let sqrt2 = 2.0_f64.sqrt();
        assert_eq!(ts.len(), 3);
        assert_eq!(ts.values()[0], 0.0);
        assert_eq!(ts.values()[1], 1.0);
        assert!((ts.values()[2] - sqrt2).abs() < 1e-15);
    }

    #[test]
    fn idempotent_union() {
        let a = square_dm();
        let b = square_dm();
        let one = threshold_sequence(&[a.clone()], 1e-9).unwrap();
        let two = threshold_sequence(&[a, b], 1e-9).unwrap();
        assert_eq!(one, two);
    }

    #[test]
    fn dedup_within_tolerance() {
        let dm = DistanceMatrix::from_entries(
            2,
            vec![0.0, 1.0, 1.0, 0.0],
        )
        .unwrap();
        let dm2 = DistanceMatrix::from_entries(
            2,
            vec![0.0, 1.0 + 1e-12, 1.0 + 1e-12, 0.0],
        )
        .unwrap();
        let ts = threshold_sequence(&[dm, dm2], 1e-9).unwrap();
        assert_eq!(ts.values(), &[0.0, 1.0]);
    }

    #[test]
    fn empty_input_yields_zero_only() {
        let ts = threshold_sequence(&[], 1e-9).unwrap();
        assert_eq!(ts.values(), &[0.0]);
    }

    #[test]
    fn appearance_index_closed_rule() {
        let ts = ThresholdSequence::new(vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(ts.appearance_index(0.0), Some(0));
        assert_eq!(ts.appearance_index(1.0), Some(1));
        assert_eq!(ts.appearance_index(1.5), Some(2));
        assert_eq!(ts.appearance_index(2.5), None);
    }
}
