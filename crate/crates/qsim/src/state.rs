//! Dense statevector with the gate kernels used by phase estimation.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{QsimError, Result};
use crate::pauli::PauliMasks;

const NORM_TOL: f64 = 1e-10;
const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Pure state on `num_qubits` qubits; qubit q is bit q of the basis index.
#[derive(Debug, Clone)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// Computational basis state |index>.
    pub fn basis(num_qubits: usize, index: u64) -> Result<Self> {
        if num_qubits == 0 || num_qubits > 26 {
            return Err(QsimError::Resource(format!("qubit count {num_qubits} out of range 1..=26")));
        }
        let dim = 1usize << num_qubits;
        if index as usize >= dim {
            return Err(QsimError::InvalidInput(format!("basis index {index} out of range")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Build from raw amplitudes; the L2 norm must be 1 within 1e-10.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(QsimError::InvalidInput(format!(
                "amplitude count {} is not a power of two",
                amps.len()
            )));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        let state = Self { num_qubits, amps };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QsimError::InvalidInput(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Squared overlap with another state.
    pub fn fidelity(&self, other: &Statevector) -> f64 {
        let acc: Complex64 =
            self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum();
        acc.norm_sqr()
    }

    /// Joint state `|0...0>_high (x) self`, extending by `extra` qubits above.
    pub fn with_zero_ancillas(&self, extra: usize) -> Result<Self> {
        let total = self.num_qubits + extra;
        if total > 26 {
            return Err(QsimError::Resource(format!("joint register of {total} qubits over budget")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << total];
        amps[..self.amps.len()].copy_from_slice(&self.amps);
        Ok(Self { num_qubits: total, amps })
    }

    pub fn apply_hadamard(&mut self, qubit: usize) {
        let mask = 1usize << qubit;
        for b in 0..self.amps.len() {
            if b & mask == 0 {
                let lo = self.amps[b];
                let hi = self.amps[b | mask];
                self.amps[b] = (lo + hi) * FRAC_1_SQRT_2;
                self.amps[b | mask] = (lo - hi) * FRAC_1_SQRT_2;
            }
        }
    }

    /// exp(-i * theta * P) for the Pauli string described by `masks`.
    pub fn apply_pauli_rotation(&mut self, masks: &PauliMasks, theta: f64) {
        self.apply_controlled_pauli_rotation_impl(masks, theta, 0);
    }

    /// Controlled exp(-i * theta * P); the string must act as identity on
    /// the control qubit.
    pub fn apply_controlled_pauli_rotation(
        &mut self,
        control: usize,
        masks: &PauliMasks,
        theta: f64,
    ) -> Result<()> {
        let cmask = 1u64 << control;
        if masks.x & cmask != 0 || masks.z & cmask != 0 {
            return Err(QsimError::InvalidInput(format!(
                "Pauli string acts on control qubit {control}"
            )));
        }
        self.apply_controlled_pauli_rotation_impl(masks, theta, cmask);
        Ok(())
    }

    fn apply_controlled_pauli_rotation_impl(&mut self, masks: &PauliMasks, theta: f64, cmask: u64) {
        let (cos, sin) = (theta.cos(), theta.sin());
        let mi_sin = Complex64::new(0.0, -sin);
        if masks.x == 0 {
            // diagonal string: amplitude picks up exp(-i*theta*(+-1))
            let plus = Complex64::new(cos, -sin);
            let minus = Complex64::new(cos, sin);
            for b in 0..self.amps.len() as u64 {
                if b & cmask != cmask {
                    continue;
                }
                let phase = if (b & masks.z).count_ones() % 2 == 0 { plus } else { minus };
                self.amps[b as usize] *= phase;
            }
            return;
        }
        let high = 1u64 << (63 - masks.x.leading_zeros());
        for b in 0..self.amps.len() as u64 {
            if b & high != 0 || b & cmask != cmask {
                continue;
            }
            let partner = b ^ masks.x;
            let pa = masks.phase(b); // P|b> = pa |partner>
            let pb = masks.phase(partner); // P|partner> = pb |b>
            let va = self.amps[b as usize];
            let vb = self.amps[partner as usize];
            self.amps[b as usize] = cos * va + mi_sin * (pb * vb);
            self.amps[partner as usize] = cos * vb + mi_sin * (pa * va);
        }
    }

    /// Apply a dense unitary on the low `k` qubits (`matrix` is 2^k x 2^k),
    /// conditioned on `control` (which must lie above the low block).
    pub fn apply_controlled_dense(
        &mut self,
        control: usize,
        matrix: &DMatrix<Complex64>,
    ) -> Result<()> {
        let sub = matrix.nrows();
        if !sub.is_power_of_two() || matrix.ncols() != sub {
            return Err(QsimError::InvalidInput("dense block must be square power-of-two".into()));
        }
        let k = sub.trailing_zeros() as usize;
        if control < k || control >= self.num_qubits {
            return Err(QsimError::InvalidInput(format!(
                "control qubit {control} must lie above the {k} target qubits"
            )));
        }
        let blocks = self.amps.len() / sub;
        let cbit = 1usize << (control - k);
        let mut scratch = vec![Complex64::new(0.0, 0.0); sub];
        for blk in 0..blocks {
            if blk & cbit == 0 {
                continue;
            }
            let offset = blk * sub;
            let window = &mut self.amps[offset..offset + sub];
            for (i, s) in scratch.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, w) in window.iter().enumerate() {
                    acc += matrix[(i, j)] * w;
                }
                *s = acc;
            }
            window.copy_from_slice(&scratch);
        }
        Ok(())
    }

    /// Inverse quantum Fourier transform on the top `t` qubits
    /// (`|j> -> 2^{-t/2} sum_k exp(-2 pi i j k / 2^t) |k>` on that register).
    pub fn apply_inverse_qft_top(&mut self, t: usize) -> Result<()> {
        if t == 0 || t > self.num_qubits {
            return Err(QsimError::InvalidInput(format!("bad iQFT register size {t}")));
        }
        let n = 1usize << t;
        let low = self.amps.len() / n;
        let root = -2.0 * std::f64::consts::PI / n as f64;
        let scale = 1.0 / (n as f64).sqrt();
        let dft: Vec<Complex64> = (0..n * n)
            .map(|idx| {
                let (k, j) = (idx / n, idx % n);
                Complex64::from_polar(scale, root * (k as f64) * (j as f64))
            })
            .collect();
        let mut column = vec![Complex64::new(0.0, 0.0); n];
        let mut result = vec![Complex64::new(0.0, 0.0); n];
        for s in 0..low {
            for (a, c) in column.iter_mut().enumerate() {
                *c = self.amps[a * low + s];
            }
            for k in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, c) in column.iter().enumerate() {
                    acc += dft[k * n + j] * c;
                }
                result[k] = acc;
            }
            for (a, r) in result.iter().enumerate() {
                self.amps[a * low + s] = *r;
            }
        }
        Ok(())
    }

    /// Marginal probabilities of the top `t` qubits.
    pub fn top_register_distribution(&self, t: usize) -> Vec<f64> {
        let n = 1usize << t;
        let low = self.amps.len() / n;
        let mut probs = vec![0.0; n];
        for (a, p) in probs.iter_mut().enumerate() {
            *p = self.amps[a * low..(a + 1) * low].iter().map(|v| v.norm_sqr()).sum();
        }
        probs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliTerm;

    #[test]
    fn hadamard_pair() {
        let mut s = Statevector::basis(1, 0).unwrap();
        s.apply_hadamard(0);
        assert!((s.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn x_rotation_by_pi_flips() {
        let mut s = Statevector::basis(1, 0).unwrap();
        let t = PauliTerm::parse("X", 1.0).unwrap();
        s.apply_pauli_rotation(&t.masks(), std::f64::consts::FRAC_PI_2);
        // exp(-i pi/2 X)|0> = -i |1>
        assert!(s.amplitudes()[0].norm() < 1e-15);
        assert!((s.amplitudes()[1] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn controlled_rotation_leaves_zero_control_alone() {
        let mut s = Statevector::basis(2, 0b01).unwrap(); // control qubit 1 clear
        let t = PauliTerm::parse("X", 1.0).unwrap();
        s.apply_controlled_pauli_rotation(1, &t.masks(), 0.9).unwrap();
        assert!((s.amplitudes()[0b01].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn iqft_inverts_phase_gradient() {
        // prepare sum_j exp(2 pi i j y / 8)/sqrt(8) |j> on 3 qubits; iQFT -> |y>
        let y = 5usize;
        let n = 8;
        let amps: Vec<Complex64> = (0..n)
            .map(|j| {
                Complex64::from_polar(
                    1.0 / (n as f64).sqrt(),
                    2.0 * std::f64::consts::PI * (j as f64) * (y as f64) / n as f64,
                )
            })
            .collect();
        let mut s = Statevector::from_amplitudes(amps).unwrap();
        s.apply_inverse_qft_top(3).unwrap();
        let probs = s.top_register_distribution(3);
        assert!((probs[y] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dense_controlled_block() {
        // control qubit 1, target qubit 0: CX built from dense X block
        let x = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        let mut s = Statevector::basis(2, 0b10).unwrap();
        s.apply_controlled_dense(1, &x).unwrap();
        assert!((s.amplitudes()[0b11].re - 1.0).abs() < 1e-15);
    }
}
