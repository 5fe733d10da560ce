//! Signed boundary matrices of simplicial complexes.

use crate::complex::SimplicialComplex;
use crate::error::{Result, TdaError};

/// Sparse column-major boundary matrix for dimension `p`: rows are indexed
/// by the canonical order of (p-1)-simplices, columns by p-simplices. Each
/// column holds exactly p+1 entries with values +-1, the sign being (-1)^j
/// for the face that omits the j-th smallest vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMatrix {
    p: usize,
    num_rows: usize,
    num_cols: usize,
    cols: Vec<Vec<(usize, i32)>>,
}

impl BoundaryMatrix {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn columns(&self) -> &[Vec<(usize, i32)>] {
        &self.cols
    }

    /// Dense copy, row-major, for tests and small-instance checks.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.num_cols]; self.num_rows];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                m[r][c] = v as i64;
            }
        }
        m
    }
}

/// Column of signed faces for one sorted simplex, with rows resolved by
/// binary search in the canonical face list.
pub(crate) fn boundary_column(
    simplex: &[usize],
    faces: &[Vec<usize>],
) -> Result<Vec<(usize, i32)>> {
    let mut col = Vec::with_capacity(simplex.len());
    let mut face = Vec::with_capacity(simplex.len() - 1);
    for j in 0..simplex.len() {
        face.clear();
        face.extend(simplex.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v));
        let row = faces
            .binary_search_by(|probe| probe.as_slice().cmp(face.as_slice()))
            .map_err(|_| {
                TdaError::Structural(format!("face {face:?} of {simplex:?} not present"))
            })?;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        col.push((row, sign));
    }
    col.sort_unstable_by_key(|&(r, _)| r);
    Ok(col)
}

/// Boundary operator for dimension `p` (1 <= p <= max_dim).
pub fn boundary_matrix(s: &SimplicialComplex, p: usize) -> Result<BoundaryMatrix> {
    if p == 0 || p > s.max_dim() {
        return Err(TdaError::InvalidInput(format!(
            "boundary dimension {p} out of range 1..={}",
            s.max_dim()
        )));
    }
    let faces = s.simplices(p - 1);
    let simplices = s.simplices(p);
    let cols = simplices
        .iter()
        .map(|sx| boundary_column(sx, faces))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryMatrix {
        p,
        num_rows: faces.len(),
        num_cols: simplices.len(),
        cols,
    })
}
