//! Pauli strings and the Pauli-basis expansion of Hermitian operators.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{QsimError, Result};

/// Single-qubit Pauli operator. The derived ordering (I < X < Y < Z) is the
/// tie-break used when Trotter term order is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A weighted Pauli string over `num_qubits` qubits. Qubit q corresponds to
/// bit q of a basis-state index.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    ops: Vec<Pauli>,
    coefficient: f64,
}

/// Bit masks describing the permutation-phase action of a Pauli string:
/// P|b> = i^{n_y} * (-1)^{popcount(b & z)} * |b ^ x>.
#[derive(Debug, Clone, Copy)]
pub struct PauliMasks {
    pub x: u64,
    pub z: u64,
    pub y_count: u32,
}

impl PauliMasks {
    /// Phase picked up by basis state `b` under the string.
    pub fn phase(&self, b: u64) -> Complex64 {
        let i_pow = match self.y_count % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        if (b & self.z).count_ones() % 2 == 1 {
            -i_pow
        } else {
            i_pow
        }
    }
}

impl PauliTerm {
    pub fn new(ops: Vec<Pauli>, coefficient: f64) -> Result<Self> {
        if ops.is_empty() || ops.len() > 63 {
            return Err(QsimError::InvalidInput(format!(
                "Pauli string length {} outside 1..=63",
                ops.len()
            )));
        }
        if !coefficient.is_finite() {
            return Err(QsimError::InvalidInput("non-finite coefficient".into()));
        }
        Ok(Self { ops, coefficient })
    }

    /// Parse from a word over {I, X, Y, Z}; character k addresses qubit k.
    pub fn parse(word: &str, coefficient: f64) -> Result<Self> {
        let ops = word
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(QsimError::InvalidInput(format!("bad Pauli letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ops, coefficient)
    }

    pub fn num_qubits(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn word(&self) -> String {
        self.ops.iter().map(|p| p.as_char()).collect()
    }

    pub fn masks(&self) -> PauliMasks {
        let mut x = 0u64;
        let mut z = 0u64;
        let mut y_count = 0u32;
        for (q, op) in self.ops.iter().enumerate() {
            match op {
                Pauli::I => {}
                Pauli::X => x |= 1 << q,
                Pauli::Y => {
                    x |= 1 << q;
                    z |= 1 << q;
                    y_count += 1;
                }
                Pauli::Z => z |= 1 << q,
            }
        }
        PauliMasks { x, z, y_count }
    }

    /// Dense matrix of coefficient * P.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.num_qubits();
        let masks = self.masks();
        let mut m = DMatrix::zeros(dim, dim);
        for b in 0..dim as u64 {
            let target = b ^ masks.x;
            m[(target as usize, b as usize)] += self.coefficient * masks.phase(b);
        }
        m
    }
}

/// Sum of weighted Pauli strings as a dense matrix.
pub fn terms_to_dense(num_qubits: usize, terms: &[PauliTerm]) -> Result<DMatrix<Complex64>> {
    let dim = 1usize << num_qubits;
    let mut m = DMatrix::zeros(dim, dim);
    for term in terms {
        if term.num_qubits() != num_qubits {
            return Err(QsimError::InvalidInput(format!(
                "term {} has {} qubits, expected {num_qubits}",
                term.word(),
                term.num_qubits()
            )));
        }
        let masks = term.masks();
        for b in 0..dim as u64 {
            let target = b ^ masks.x;
            m[(target as usize, b as usize)] += term.coefficient * masks.phase(b);
        }
    }
    Ok(m)
}

/// Hermitian operator on `2^n` dimensions stored as its nonzero entries.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    num_qubits: usize,
    entries: Vec<(u64, u64, Complex64)>,
}

const HERMITICITY_TOL: f64 = 1e-10;

impl HermitianOperator {
    pub fn from_triplets(num_qubits: usize, entries: Vec<(u64, u64, Complex64)>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > 30 {
            return Err(QsimError::InvalidInput(format!("qubit count {num_qubits} out of range")));
        }
        let dim = 1u64 << num_qubits;
        let mut map: HashMap<(u64, u64), Complex64> = HashMap::new();
        for &(r, c, v) in &entries {
            if r >= dim || c >= dim {
                return Err(QsimError::InvalidInput(format!("entry ({r},{c}) out of range")));
            }
            *map.entry((r, c)).or_insert(Complex64::new(0.0, 0.0)) += v;
        }
        map.retain(|_, v| v.norm() > 0.0);
        for (&(r, c), &v) in &map {
            let conj = map.get(&(c, r)).copied().unwrap_or(Complex64::new(0.0, 0.0));
            if (v - conj.conj()).norm() > HERMITICITY_TOL {
                return Err(QsimError::InvalidInput(format!(
                    "matrix is not Hermitian at ({r},{c})"
                )));
            }
        }
        let mut entries: Vec<(u64, u64, Complex64)> =
            map.into_iter().map(|((r, c), v)| (r, c, v)).collect();
        entries.sort_by_key(|&(r, c, _)| (r, c));
        Ok(Self { num_qubits, entries })
    }

    pub fn from_dense(m: &DMatrix<Complex64>) -> Result<Self> {
        let dim = m.nrows();
        if dim == 0 || !dim.is_power_of_two() || m.ncols() != dim {
            return Err(QsimError::InvalidInput(format!(
                "expected square power-of-two matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        let mut entries = Vec::new();
        for c in 0..dim {
            for r in 0..dim {
                let v = m[(r, c)];
                if v.norm() > 0.0 {
                    entries.push((r as u64, c as u64, v));
                }
            }
        }
        Self::from_triplets(num_qubits, entries)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn entries(&self) -> &[(u64, u64, Complex64)] {
        &self.entries
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for &(r, c, v) in &self.entries {
            m[(r as usize, c as usize)] = v;
        }
        m
    }
}

/// Expand a Hermitian operator in the Pauli basis: c_P = tr(P * h) / 2^n.
/// Terms with |c_P| <= prune_tol are dropped. Coefficients of a Hermitian
/// operator are real; a residual imaginary part above the Hermiticity
/// tolerance is rejected.
///
/// Runs over nonzero entries grouped by row^column, so the cost is
/// 2^n * nnz(h) rather than 8^n.
pub fn pauli_decompose(h: &HermitianOperator, prune_tol: f64) -> Result<Vec<PauliTerm>> {
    if prune_tol < 0.0 {
        return Err(QsimError::InvalidInput("prune_tol must be >= 0".into()));
    }
    let n = h.num_qubits();
    let dim = 1u64 << n;
    let norm = dim as f64;

    let mut groups: HashMap<u64, Vec<(u64, Complex64)>> = HashMap::new();
    for &(r, c, v) in h.entries() {
        // tr(P h) = sum over rows y of phase(y) * h[y, y ^ x]
        groups.entry(r ^ c).or_default().push((r, v));
    }
    let mut x_masks: Vec<u64> = groups.keys().copied().collect();
    x_masks.sort_unstable();

    let mut terms = Vec::new();
    for x in x_masks {
        let group = &groups[&x];
        for z in 0..dim {
            let y_count = (x & z).count_ones();
            let masks = PauliMasks { x, z, y_count };
            let mut acc = Complex64::new(0.0, 0.0);
            for &(row, v) in group {
                acc += masks.phase(row) * v;
            }
            let coeff = acc / norm;
            if coeff.im.abs() > HERMITICITY_TOL {
                return Err(QsimError::InvalidInput(format!(
                    "non-real Pauli coefficient {coeff} for x={x:#b} z={z:#b}"
                )));
            }
            if coeff.re.abs() > prune_tol {
                let ops = (0..n)
                    .map(|q| match ((x >> q) & 1, (z >> q) & 1) {
                        (0, 0) => Pauli::I,
                        (1, 0) => Pauli::X,
                        (1, 1) => Pauli::Y,
                        _ => Pauli::Z,
                    })
                    .collect();
                terms.push(PauliTerm { ops, coefficient: coeff.re });
            }
        }
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn decompose_pauli_x() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let h = HermitianOperator::from_dense(&m).unwrap();
        let terms = pauli_decompose(&h, 1e-12).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].word(), "X");
        assert!((terms[0].coefficient() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn decompose_pauli_z() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
        let h = HermitianOperator::from_dense(&m).unwrap();
        let terms = pauli_decompose(&h, 1e-12).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].word(), "Z");
        assert!((terms[0].coefficient() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn decompose_pauli_y_has_real_coefficient() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let h = HermitianOperator::from_dense(&m).unwrap();
        let terms = pauli_decompose(&h, 1e-12).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].word(), "Y");
        assert!((terms[0].coefficient() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn round_trip_two_qubits() {
        let mut m = DMatrix::zeros(4, 4);
        m[(0, 0)] = c(0.5, 0.0);
        m[(1, 1)] = c(-0.25, 0.0);
        m[(0, 3)] = c(0.125, -0.375);
        m[(3, 0)] = c(0.125, 0.375);
        m[(2, 1)] = c(0.0, 1.0);
        m[(1, 2)] = c(0.0, -1.0);
        let h = HermitianOperator::from_dense(&m).unwrap();
        let terms = pauli_decompose(&h, 0.0).unwrap();
        let back = terms_to_dense(2, &terms).unwrap();
        let err = (&back - &m).iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(err < 1e-13, "round trip error {err}");
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)]);
        assert!(HermitianOperator::from_dense(&m).is_err());
    }

    #[test]
    fn masks_and_phase() {
        let t = PauliTerm::parse("YZ", 1.0).unwrap();
        let m = t.masks();
        assert_eq!(m.x, 0b01);
        assert_eq!(m.z, 0b11);
        assert_eq!(m.y_count, 1);
        // Y on qubit 0, Z on qubit 1; |01> -> phase: i * (-1)^{popcount(01 & 11)} = -i
        assert_eq!(m.phase(0b01), Complex64::new(0.0, -1.0));
    }
}
