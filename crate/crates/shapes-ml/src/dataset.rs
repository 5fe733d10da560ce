//! Balanced shape datasets and stratified train/test splits, fully
//! deterministic in the master seed.

use rand::seq::SliceRandom;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use qsim::seed::{derive_seed, hash_token};
use tda_core::PointCloud;

use crate::error::{Result, ShapesError};
use crate::shapes::{make_shape, sample_perimeter, ShapeKind, TransformRecord};

#[derive(Debug, Clone)]
pub struct ShapeSample {
    pub kind: ShapeKind,
    pub label: i8,
    pub points: PointCloud,
    pub transform: TransformRecord,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub samples: Vec<ShapeSample>,
    pub seed: u64,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn labels(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.label as f64).collect()
    }
}

/// Generate a balanced dataset of `m` shapes with `n_points` perimeter
/// samples each. Shape transforms are derived from the master seed and the
/// sample index alone, so sweeping `n_points` re-samples the same shapes.
pub fn generate_dataset(m: usize, n_points: usize, seed: u64) -> Result<Dataset> {
    if m == 0 || m % 2 != 0 {
        return Err(ShapesError::InvalidInput(format!("dataset size must be even, got {m}")));
    }
    let mut samples = Vec::with_capacity(m);
    for i in 0..m {
        let kind = if i < m / 2 { ShapeKind::Triangle } else { ShapeKind::SlicedQuadrangle };
        let mut shape_rng =
            ChaCha8Rng::seed_from_u64(derive_seed(seed, &[hash_token("shape"), i as u64]));
        let (geometry, transform) = make_shape(kind, &mut shape_rng);
        let mut point_rng = ChaCha8Rng::seed_from_u64(derive_seed(
            seed,
            &[hash_token("points"), i as u64, n_points as u64],
        ));
        let points = sample_perimeter(&geometry, n_points, &mut point_rng)?;
        samples.push(ShapeSample { kind, label: kind.label(), points, transform });
    }
    Ok(Dataset { samples, seed })
}

/// Stratified split: each class is shuffled independently and cut at
/// round(ratio * class_size), so both subsets stay balanced.
pub fn stratified_split(
    dataset: &Dataset,
    ratio: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(ShapesError::InvalidInput(format!("ratio must be in (0,1), got {ratio}")));
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (class, label) in [(0u64, 1i8), (1u64, -1i8)] {
        let mut indices: Vec<usize> = dataset
            .samples
            .iter()
            .enumerate()
            .filter(|(_, s)| s.label == label)
            .map(|(i, _)| i)
            .collect();
        let n_train = (ratio * indices.len() as f64).round() as usize;
        if n_train == 0 || n_train >= indices.len() {
            return Err(ShapesError::InvalidInput(format!(
                "ratio {ratio} leaves an empty subset for class {label}"
            )));
        }
        let mut rng =
            ChaCha8Rng::seed_from_u64(derive_seed(seed, &[hash_token("split"), class]));
        indices.shuffle(&mut rng);
        train.extend_from_slice(&indices[..n_train]);
        test.extend_from_slice(&indices[n_train..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_and_deterministic() {
        let a = generate_dataset(100, 20, 7).unwrap();
        let b = generate_dataset(100, 20, 7).unwrap();
        assert_eq!(a.len(), 100);
        let pos = a.samples.iter().filter(|s| s.label == 1).count();
        assert_eq!(pos, 50);
        for (x, y) in a.samples.iter().zip(&b.samples) {
            assert_eq!(x.points, y.points);
            assert_eq!(x.transform, y.transform);
        }
    }

    #[test]
    fn shapes_shared_across_point_counts() {
        let a = generate_dataset(10, 5, 3).unwrap();
        let b = generate_dataset(10, 12, 3).unwrap();
        for (x, y) in a.samples.iter().zip(&b.samples) {
            assert_eq!(x.transform, y.transform);
            assert_eq!(x.points.len(), 5);
            assert_eq!(y.points.len(), 12);
        }
    }

    #[test]
    fn small_quantum_dataset_shape() {
        let d = generate_dataset(20, 5, 42).unwrap();
        assert_eq!(d.len(), 20);
        assert!(d.samples.iter().all(|s| s.points.len() == 5));
    }

    #[test]
    fn odd_size_rejected() {
        assert!(generate_dataset(7, 5, 0).is_err());
    }

    #[test]
    fn split_balanced_disjoint_exhaustive() {
        let d = generate_dataset(100, 5, 9).unwrap();
        let (train, test) = stratified_split(&d, 0.7, 11).unwrap();
        assert_eq!(train.len(), 70);
        assert_eq!(test.len(), 30);
        let pos_train = train.iter().filter(|&&i| d.samples[i].label == 1).count();
        let pos_test = test.iter().filter(|&&i| d.samples[i].label == 1).count();
        assert_eq!(pos_train, 35);
        assert_eq!(pos_test, 15);
        let mut all: Vec<usize> = train.iter().chain(test.iter()).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..100).collect::<Vec<_>>());
    }

    #[test]
    fn minimal_split() {
        let d = generate_dataset(4, 3, 1).unwrap();
        let (train, test) = stratified_split(&d, 0.5, 0).unwrap();
        assert_eq!(train.len(), 2);
        assert_eq!(test.len(), 2);
    }

    #[test]
    fn infeasible_split_rejected() {
        let d = generate_dataset(4, 3, 1).unwrap();
        assert!(stratified_split(&d, 0.1, 0).is_err());
    }
}
