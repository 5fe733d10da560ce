//! Procedural shapes: a triangle and a sliced quadrangle, randomly rotated
//! and sheared, with uniform perimeter sampling.

use rand::Rng;
use tda_core::PointCloud;

use crate::error::{Result, ShapesError};

/// The two classes of the shape benchmark. The shapes are topologically
/// distinct: the triangle perimeter bounds one loop, the sliced quadrangle
/// bounds two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Triangle,
    SlicedQuadrangle,
}

impl ShapeKind {
    pub fn label(self) -> i8 {
        match self {
            ShapeKind::Triangle => 1,
            ShapeKind::SlicedQuadrangle => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Triangle => "triangle",
            ShapeKind::SlicedQuadrangle => "sliced_quadrangle",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "triangle" => Ok(ShapeKind::Triangle),
            "sliced_quadrangle" => Ok(ShapeKind::SlicedQuadrangle),
            other => Err(ShapesError::InvalidInput(format!("unknown shape kind {other:?}"))),
        }
    }
}

/// The affine transform applied to a base shape, kept for reproducibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformRecord {
    /// Rotation angle in radians, drawn from U[0, 2*pi).
    pub rotation: f64,
    /// Shear angles along x and y in radians, each drawn from U[0, pi/4].
    pub shear_x: f64,
    pub shear_y: f64,
}

impl TransformRecord {
    pub const IDENTITY: TransformRecord =
        TransformRecord { rotation: 0.0, shear_x: 0.0, shear_y: 0.0 };

    /// Shear o rotation, applied to column vectors.
    fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        let (sin, cos) = self.rotation.sin_cos();
        let rotated = [cos * p[0] - sin * p[1], sin * p[0] + cos * p[1]];
        let (tx, ty) = (self.shear_x.tan(), self.shear_y.tan());
        [rotated[0] + tx * rotated[1], ty * rotated[0] + rotated[1]]
    }
}

/// A shape as a list of straight segments (not necessarily a single closed
/// polyline: the sliced quadrangle carries its diagonal as a fifth
/// segment).
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeGeometry {
    segments: Vec<([f64; 2], [f64; 2])>,
}

impl ShapeGeometry {
    pub fn segments(&self) -> &[([f64; 2], [f64; 2])] {
        &self.segments
    }

    pub fn perimeter(&self) -> f64 {
        self.segments.iter().map(|(a, b)| segment_length(*a, *b)).sum()
    }
}

fn segment_length(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

fn base_segments(kind: ShapeKind) -> Vec<([f64; 2], [f64; 2])> {
    match kind {
        ShapeKind::Triangle => {
            let v = [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
            vec![(v[0], v[1]), (v[1], v[2]), (v[2], v[0])]
        }
        ShapeKind::SlicedQuadrangle => {
            let v = [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]];
            vec![
                (v[0], v[1]),
                (v[1], v[2]),
                (v[2], v[3]),
                (v[3], v[0]),
                (v[0], v[2]), // the slicing diagonal
            ]
        }
    }
}

/// A base shape under an explicit transform.
pub fn make_shape_with_transform(kind: ShapeKind, transform: &TransformRecord) -> ShapeGeometry {
    let segments = base_segments(kind)
        .into_iter()
        .map(|(a, b)| (transform.apply(a), transform.apply(b)))
        .collect();
    ShapeGeometry { segments }
}

/// Draw a random transform (rotation, then the two shear angles) and apply
/// it to the base shape.
pub fn make_shape<R: Rng>(kind: ShapeKind, rng: &mut R) -> (ShapeGeometry, TransformRecord) {
    let transform = TransformRecord {
        rotation: rng.gen::<f64>() * 2.0 * std::f64::consts::PI,
        shear_x: rng.gen::<f64>() * std::f64::consts::FRAC_PI_4,
        shear_y: rng.gen::<f64>() * std::f64::consts::FRAC_PI_4,
    };
    (make_shape_with_transform(kind, &transform), transform)
}

/// Sample `n` points i.i.d. uniform in arc length over all segments of the
/// (transformed) shape, diagonal included.
pub fn sample_perimeter<R: Rng>(shape: &ShapeGeometry, n: usize, rng: &mut R) -> Result<PointCloud> {
    if n < 3 {
        return Err(ShapesError::InvalidInput(format!("need at least 3 points, got {n}")));
    }
    let lengths: Vec<f64> = shape.segments.iter().map(|(a, b)| segment_length(*a, *b)).collect();
    let total: f64 = lengths.iter().sum();
    let mut cumulative = Vec::with_capacity(lengths.len());
    let mut acc = 0.0;
    for l in &lengths {
        acc += l;
        cumulative.push(acc);
    }
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let u = rng.gen::<f64>() * total;
        let idx = cumulative.partition_point(|&c| c <= u).min(shape.segments.len() - 1);
        let prev = if idx == 0 { 0.0 } else { cumulative[idx - 1] };
        let frac = ((u - prev) / lengths[idx]).clamp(0.0, 1.0);
        let (a, b) = shape.segments[idx];
        points.push(vec![a[0] + frac * (b[0] - a[0]), a[1] + frac * (b[1] - a[1])]);
    }
    Ok(PointCloud::new(points)?)
}
