//! Point clouds and pairwise Euclidean distance matrices.

use crate::error::{Result, TdaError};

/// A finite set of points in `R^d`.
///
/// All points share the same dimension `d >= 1` and every coordinate is
/// finite. Duplicate points are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
    dim: usize,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(TdaError::InvalidInput("point cloud must be nonempty".into()));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(TdaError::InvalidInput("points must have dimension >= 1".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(TdaError::InvalidInput(format!(
                    "point {i} has dimension {} but expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(TdaError::InvalidInput(format!("point {i} has a non-finite coordinate")));
            }
        }
        Ok(Self { points, dim })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}

/// Symmetric matrix of pairwise Euclidean distances with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>, // row-major n x n
}

impl DistanceMatrix {
    /// Build a distance matrix from raw entries, validating symmetry,
    /// non-negativity and the zero diagonal.
    pub fn from_entries(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(TdaError::InvalidInput(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            if entries[i * n + i] != 0.0 {
                return Err(TdaError::InvalidInput(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let d = entries[i * n + j];
                if !d.is_finite() || d < 0.0 {
                    return Err(TdaError::InvalidInput(format!("invalid distance at ({i},{j}): {d}")));
                }
                if d != entries[j * n + i] {
                    return Err(TdaError::InvalidInput(format!("asymmetric entry at ({i},{j})")));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// All distances for unordered pairs i < j, in row-major pair order.
    pub fn upper_triangle(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| self.get(i, j)))
    }

    /// Largest pairwise distance (0 for a single point).
    pub fn max_distance(&self) -> f64 {
        self.upper_triangle().fold(0.0, f64::max)
    }
}

/// Compute the Euclidean distance matrix of a point cloud.
pub fn distance_matrix(cloud: &PointCloud) -> DistanceMatrix {
    let n = cloud.len();
    let pts = cloud.points();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = pts[i]
                .iter()
                .zip(&pts[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    DistanceMatrix { n, entries }
}
