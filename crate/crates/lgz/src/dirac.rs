//! The Dirac operator of a simplicial complex, embedded on bitstring basis
//! states: entry between a weight-(p+1) string x and a weight-p string y is
//! the boundary sign for the omitted vertex whenever y is a facet of x and
//! both are simplices. Hermitian by construction; its square is the full
//! Hodge Laplacian, block-diagonal over Hamming-weight sectors.

use nalgebra::DMatrix;
use num_complex::Complex64;

use qsim::HermitianOperator;
use tda_core::SimplicialComplex;

use crate::error::{LgzError, Result};

/// Hard cap on vertices: the 2^n-dimensional embedding is simulated.
pub const MAX_LGZ_VERTICES: usize = 14;
/// Dense diagonalization guard for diagnostics.
pub const MAX_DIAG_VERTICES: usize = 10;

#[derive(Debug, Clone)]
pub struct DiracOperator {
    n: usize,
    op: HermitianOperator,
    /// Simplices per dimension as bitstrings, the sector bases of B^2.
    sector_basis: Vec<Vec<u64>>,
}

impl DiracOperator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn max_dim(&self) -> usize {
        self.sector_basis.len() - 1
    }

    /// k-simplices as bitstrings (the clique set Cl_k of the source graph).
    pub fn sector(&self, k: usize) -> &[u64] {
        self.sector_basis.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.op.entries().is_empty()
    }

    /// Dense real form (the operator is real symmetric).
    pub fn to_dense(&self) -> DMatrix<f64> {
        let dim = self.op.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for &(r, c, v) in self.op.entries() {
            m[(r as usize, c as usize)] = v.re;
        }
        m
    }

    /// The Hodge Laplacian block for order k: B^2 restricted to the chain
    /// space spanned by k-simplex basis states. Its kernel dimension is the
    /// k-th Betti number.
    pub fn sector_laplacian(&self, k: usize) -> Result<DMatrix<f64>> {
        if self.n > MAX_DIAG_VERTICES {
            return Err(LgzError::Resource(format!(
                "dense sector Laplacian needs n <= {MAX_DIAG_VERTICES}, got {}",
                self.n
            )));
        }
        let basis = self.sector(k);
        let b = self.to_dense();
        let b2 = &b * &b;
        let m = DMatrix::from_fn(basis.len(), basis.len(), |i, j| {
            b2[(basis[i] as usize, basis[j] as usize)]
        });
        Ok(m)
    }
}

/// Assemble the Dirac operator from all boundary maps of the complex.
pub fn dirac_operator(s: &SimplicialComplex) -> Result<DiracOperator> {
    let n = s.n();
    if n == 0 {
        return Err(LgzError::InvalidInput("complex has no vertices".into()));
    }
    if n > MAX_LGZ_VERTICES {
        return Err(LgzError::Resource(format!(
            "Dirac operator on {n} vertices exceeds the n <= {MAX_LGZ_VERTICES} simulator budget"
        )));
    }
    let mut entries: Vec<(u64, u64, Complex64)> = Vec::new();
    for p in 1..=s.max_dim() {
        for simplex in s.simplices(p) {
            let col = simplex.iter().fold(0u64, |acc, &v| acc | (1 << v));
            for (j, &v) in simplex.iter().enumerate() {
                let row = col & !(1u64 << v);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                entries.push((row, col, Complex64::new(sign, 0.0)));
                entries.push((col, row, Complex64::new(sign, 0.0)));
            }
        }
    }
    let op = HermitianOperator::from_triplets(n, entries)?;
    let sector_basis = (0..=s.max_dim()).map(|p| s.simplices_as_bits(p)).collect();
    Ok(DiracOperator { n, op, sector_basis })
}

/// Rescaling factor for phase estimation: the Gershgorin row-sum bound on
/// |eigenvalues|, padded by 1.01 so every eigenphase of B / factor lies
/// strictly inside (-1, 1). Returns 1 for the zero operator.
pub fn rescale_factor(b: &DiracOperator) -> f64 {
    let dim = b.operator().dim();
    let mut row_sums = vec![0.0f64; dim];
    for &(r, _, v) in b.operator().entries() {
        row_sums[r as usize] += v.norm();
    }
    let bound = row_sums.iter().fold(0.0f64, |a, &s| a.max(s));
    if bound == 0.0 {
        1.0
    } else {
        bound * 1.01
    }
}

/// Extreme nonzero eigenvalue magnitudes of the unscaled operator and their
/// ratio kappa. Eigenvalues with |lambda| <= 1e-8 count as zero; a zero
/// operator has no nonzero eigenvalues and kappa is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionDiagnostics {
    pub lambda_max: f64,
    pub lambda_min_nonzero: Option<f64>,
    pub kappa: Option<f64>,
}

pub const EIGENVALUE_ZERO_TOL: f64 = 1e-8;

pub fn condition_diagnostics(b: &DiracOperator) -> Result<ConditionDiagnostics> {
    if b.n() > MAX_DIAG_VERTICES {
        return Err(LgzError::Resource(format!(
            "dense diagnostics need n <= {MAX_DIAG_VERTICES}, got {}",
            b.n()
        )));
    }
    let eig = b.to_dense().symmetric_eigen();
    let mut lambda_max = 0.0f64;
    let mut lambda_min: Option<f64> = None;
    for &l in eig.eigenvalues.iter() {
        let mag = l.abs();
        lambda_max = lambda_max.max(mag);
        if mag > EIGENVALUE_ZERO_TOL {
            lambda_min = Some(lambda_min.map_or(mag, |m: f64| m.min(mag)));
        }
    }
    Ok(ConditionDiagnostics {
        lambda_max,
        lambda_min_nonzero: lambda_min,
        kappa: lambda_min.map(|m| lambda_max / m),
    })
}
