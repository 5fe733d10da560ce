//! Quantum phase estimation over a Pauli-term Hamiltonian.
//!
//! The circuit is the textbook one: Hadamards on t ancillas, controlled
//! powers U^{2^s} of U = exp(-i H), inverse QFT, ancilla measurement.
//! Powers under approximate simulation evolve for time 2^s with repetitions
//! scaled proportionally, so the per-unit-time error is comparable across
//! rungs: Trotter uses r * 2^s slices and qDrift draws N * 2^s samples.
//! For the deterministic methods this makes the whole run textbook QPE of a
//! fixed unitary (exp(-i H), or the r-slice Trotter product), which is
//! applied as cached dense controlled powers.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::error::{QsimError, Result};
use crate::evolve::{
    trotter_order, trotter_slice_unitary, EvolutionConfig, EvolutionMethod, QdriftSampler,
};
use crate::pauli::{pauli_decompose, terms_to_dense, HermitianOperator, PauliMasks, PauliTerm};
use crate::seed::mix_seed;
use crate::state::Statevector;

/// System Hamiltonian handed to phase estimation: the Pauli-term list used
/// by Trotter/qDrift, plus an optional dense form for the exact path.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    num_qubits: usize,
    terms: Vec<PauliTerm>,
    dense: Option<DMatrix<Complex64>>,
}

impl Hamiltonian {
    pub fn from_terms(num_qubits: usize, terms: Vec<PauliTerm>) -> Result<Self> {
        for t in &terms {
            if t.num_qubits() != num_qubits {
                return Err(QsimError::InvalidInput(format!(
                    "term {} does not act on {num_qubits} qubits",
                    t.word()
                )));
            }
        }
        Ok(Self { num_qubits, terms, dense: None })
    }

    /// Decompose a (sparse) Hermitian operator and keep its dense form for
    /// the exact evolution path.
    pub fn from_operator(op: &HermitianOperator, prune_tol: f64) -> Result<Self> {
        let terms = pauli_decompose(op, prune_tol)?;
        Ok(Self { num_qubits: op.num_qubits(), terms, dense: Some(op.to_dense()) })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    fn dense(&self) -> Result<DMatrix<Complex64>> {
        match &self.dense {
            Some(m) => Ok(m.clone()),
            None => terms_to_dense(self.num_qubits, &self.terms),
        }
    }
}

/// Measured ancilla outcomes of a phase-estimation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseHistogram {
    t: usize,
    counts: BTreeMap<u64, u64>,
    shots: u64,
}

impl PhaseHistogram {
    pub fn new(t: usize, counts: BTreeMap<u64, u64>) -> Result<Self> {
        let shots = counts.values().sum();
        if shots == 0 {
            return Err(QsimError::InvalidInput("histogram has zero shots".into()));
        }
        if counts.keys().any(|&y| y >= (1 << t)) {
            return Err(QsimError::InvalidInput("outcome exceeds t bits".into()));
        }
        Ok(Self { t, counts, shots })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn count_of(&self, outcome: u64) -> u64 {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }
}

/// Fraction of shots measuring the all-zeros ancilla outcome.
pub fn zero_phase_fraction(h: &PhaseHistogram) -> f64 {
    h.count_of(0) as f64 / h.shots() as f64
}

enum PlanKind {
    /// Cached dense controlled powers U^{2^s}, s = 0..t (exact and Trotter).
    Deterministic { powers: Vec<DMatrix<Complex64>> },
    /// Per-instantiation random products (qDrift).
    Qdrift {
        masks: Vec<PauliMasks>,
        signs: Vec<f64>,
        sampler: QdriftSampler,
        samples_per_unit: usize,
    },
}

/// A phase-estimation circuit prepared for one Hamiltonian and ancilla
/// count, reusable across input states and shots.
pub struct QpePlan {
    n_sys: usize,
    t: usize,
    kind: PlanKind,
}

impl QpePlan {
    pub fn new(ham: &Hamiltonian, t: usize, cfg: &EvolutionConfig) -> Result<Self> {
        if t == 0 {
            return Err(QsimError::InvalidInput("ancilla count t must be >= 1".into()));
        }
        cfg.validate()?;
        let n_sys = ham.num_qubits();
        let active: Vec<PauliTerm> = ham
            .terms()
            .iter()
            .filter(|term| term.coefficient().abs() > cfg.prune_tol)
            .cloned()
            .collect();
        let kind = match cfg.method {
            EvolutionMethod::Exact => {
                let h = ham.dense()?;
                if n_sys > 12 {
                    return Err(QsimError::Resource(format!(
                        "exact path over {n_sys} qubits exceeds the dense budget"
                    )));
                }
                // U^{2^s} built by eigendecomposition of the Hermitian matrix
                let eig = h.clone().symmetric_eigen();
                let powers = (0..t)
                    .map(|s| {
                        let scale = (1u64 << s) as f64;
                        let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|lambda| {
                            Complex64::from_polar(1.0, -scale * lambda)
                        }));
                        &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
                    })
                    .collect();
                PlanKind::Deterministic { powers }
            }
            EvolutionMethod::Trotter => {
                let slice = trotter_slice_unitary(n_sys, &active, 1.0, cfg.repetitions)?;
                let dim = slice.nrows();
                let mut w = DMatrix::<Complex64>::identity(dim, dim);
                for _ in 0..cfg.repetitions {
                    w = &slice * w;
                }
                let mut powers = Vec::with_capacity(t);
                let mut current = w;
                for s in 0..t {
                    if s > 0 {
                        current = &current * &current;
                    }
                    powers.push(current.clone());
                }
                PlanKind::Deterministic { powers }
            }
            EvolutionMethod::Qdrift => {
                let ordered: Vec<&PauliTerm> = trotter_order(&active);
                let coeffs: Vec<f64> = ordered.iter().map(|t| t.coefficient()).collect();
                let masks = ordered.iter().map(|t| t.masks()).collect();
                let signs = coeffs.iter().map(|c| c.signum()).collect();
                PlanKind::Qdrift {
                    masks,
                    signs,
                    sampler: QdriftSampler::new(&coeffs),
                    samples_per_unit: cfg.repetitions,
                }
            }
        };
        Ok(Self { n_sys, t, kind })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Exact ancilla outcome distribution for one circuit instantiation.
    /// For qDrift the product is drawn from `noise_seed`; the deterministic
    /// methods ignore it.
    pub fn distribution(&self, initial: &Statevector, noise_seed: u64) -> Result<Vec<f64>> {
        if initial.num_qubits() != self.n_sys {
            return Err(QsimError::InvalidInput(format!(
                "initial state has {} qubits, Hamiltonian has {}",
                initial.num_qubits(),
                self.n_sys
            )));
        }
        let mut joint = match &self.kind {
            PlanKind::Deterministic { powers } => {
                let mut joint = initial.with_zero_ancillas(self.t)?;
                for s in 0..self.t {
                    joint.apply_hadamard(self.n_sys + s);
                }
                for (s, u) in powers.iter().enumerate() {
                    joint.apply_controlled_dense(self.n_sys + s, u)?;
                }
                joint
            }
            PlanKind::Qdrift { masks, signs, sampler, samples_per_unit } => {
                self.qdrift_joint_state(initial, masks, signs, sampler, *samples_per_unit, noise_seed)?
            }
        };
        joint.apply_inverse_qft_top(self.t)?;
        Ok(joint.top_register_distribution(self.t))
    }

    /// Joint state after Hadamards and the controlled qDrift products,
    /// computed branch-wise: the system vector conditioned on ancilla value
    /// a is the ordered product of the rung unitaries selected by the bits
    /// of a. Equivalent to applying each sampled rotation as a controlled
    /// gate on the joint register, at a fraction of the arithmetic.
    fn qdrift_joint_state(
        &self,
        initial: &Statevector,
        masks: &[crate::pauli::PauliMasks],
        signs: &[f64],
        sampler: &QdriftSampler,
        samples_per_unit: usize,
        noise_seed: u64,
    ) -> Result<Statevector> {
        let dim = initial.dim();
        let mut branches: Vec<Vec<Complex64>> = Vec::with_capacity(1 << self.t);
        branches.push(initial.amplitudes().to_vec());
        let mut rng = ChaCha8Rng::seed_from_u64(noise_seed);
        let theta_unit = if sampler.lambda > 0.0 {
            sampler.lambda / samples_per_unit as f64
        } else {
            0.0
        };
        for s in 0..self.t {
            let draws = samples_per_unit << s;
            let sequence: Vec<usize> = if sampler.lambda > 0.0 {
                (0..draws).map(|_| sampler.draw(&mut rng)).collect()
            } else {
                Vec::new()
            };
            let existing = branches.len();
            for a in 0..existing {
                let mut v = branches[a].clone();
                for &j in &sequence {
                    crate::evolve::apply_rotation_slice(&mut v, &masks[j], signs[j] * theta_unit);
                }
                branches.push(v);
            }
        }
        let scale = 1.0 / ((1u64 << self.t) as f64).sqrt();
        let mut amps = Vec::with_capacity(dim << self.t);
        for branch in &branches {
            amps.extend(branch.iter().map(|&v| v * scale));
        }
        Statevector::from_amplitudes(amps)
    }

    fn is_stochastic(&self) -> bool {
        matches!(self.kind, PlanKind::Qdrift { .. })
    }
}

fn sample_outcome<R: Rng>(cumulative: &[f64], rng: &mut R) -> u64 {
    let u: f64 = rng.gen();
    cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1) as u64
}

fn cumulative(probs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    probs
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect()
}

/// Run phase estimation and sample `shots` ancilla outcomes.
///
/// Exact/Trotter circuits are deterministic, so the outcome distribution is
/// computed once and sampled multinomially. qDrift draws a fresh random
/// product per shot unless `cfg.resample_per_shot` is false.
pub fn qpe(
    initial: &Statevector,
    ham: &Hamiltonian,
    t: usize,
    shots: u64,
    cfg: &EvolutionConfig,
    seed: u64,
) -> Result<PhaseHistogram> {
    if shots == 0 {
        return Err(QsimError::InvalidInput("shots must be >= 1".into()));
    }
    let plan = QpePlan::new(ham, t, cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    if plan.is_stochastic() && cfg.resample_per_shot {
        for shot in 0..shots {
            let noise_seed = mix_seed(cfg.seed, shot);
            let probs = plan.distribution(initial, noise_seed)?;
            let cum = cumulative(&probs);
            *counts.entry(sample_outcome(&cum, &mut rng)).or_insert(0) += 1;
        }
    } else {
        let probs = plan.distribution(initial, cfg.seed)?;
        let cum = cumulative(&probs);
        for _ in 0..shots {
            *counts.entry(sample_outcome(&cum, &mut rng)).or_insert(0) += 1;
        }
    }
    PhaseHistogram::new(t, counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_hamiltonian(phase_on_one: f64) -> Hamiltonian {
        // H = diag(0, -2*pi*phase): eigenvalue exp(2 pi i phase) on |1>
        let h = -2.0 * std::f64::consts::PI * phase_on_one;
        let terms = vec![
            PauliTerm::parse("I", h / 2.0).unwrap(),
            PauliTerm::parse("Z", -h / 2.0).unwrap(),
        ];
        Hamiltonian::from_terms(1, terms).unwrap()
    }

    #[test]
    fn zero_operator_gives_all_zero_outcomes() {
        let ham = Hamiltonian::from_terms(1, vec![]).unwrap();
        let s = Statevector::basis(1, 0).unwrap();
        for cfg in [
            EvolutionConfig::exact(),
            EvolutionConfig::trotter(2),
            EvolutionConfig::qdrift(3, 5),
        ] {
            let h = qpe(&s, &ham, 3, 200, &cfg, 42).unwrap();
            assert_eq!(h.count_of(0), 200, "{:?}", cfg.method);
            assert_eq!(zero_phase_fraction(&h), 1.0);
        }
    }

    #[test]
    fn exactly_representable_phase() {
        // eigenphase 0.25 on |1>, t = 2 -> outcome 01 with probability 1
        let ham = diag_hamiltonian(0.25);
        let s = Statevector::basis(1, 1).unwrap();
        let h = qpe(&s, &ham, 2, 500, &EvolutionConfig::exact(), 7).unwrap();
        assert_eq!(h.count_of(0b01), 500);
    }

    #[test]
    fn leakage_matches_closed_form() {
        // eigenphase 1/3, t = 3: most probable outcome round(8/3) = 3 with
        // probability sin^2(pi/3) / (64 sin^2(pi/24)) ~= 0.68784
        let phi = 1.0 / 3.0;
        let ham = diag_hamiltonian(phi);
        let s = Statevector::basis(1, 1).unwrap();
        let plan = QpePlan::new(&ham, 3, &EvolutionConfig::exact()).unwrap();
        let probs = plan.distribution(&s, 0).unwrap();
        let best = probs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert_eq!(best, 3);
        let delta = phi - 3.0 / 8.0;
        let expected = (8.0 * std::f64::consts::PI * delta).sin().powi(2)
            / (8.0 * (std::f64::consts::PI * delta).sin()).powi(2);
        assert!((probs[3] - expected).abs() < 1e-12);
        assert!((expected - 0.68784).abs() < 1e-4);
    }

    #[test]
    fn zero_fraction_arithmetic() {
        let mut counts = BTreeMap::new();
        counts.insert(0b000u64, 50u64);
        counts.insert(0b011u64, 150u64);
        let h = PhaseHistogram::new(3, counts).unwrap();
        assert_eq!(h.shots(), 200);
        assert_eq!(zero_phase_fraction(&h), 0.25);
    }

    #[test]
    fn qdrift_fixed_product_is_reproducible() {
        let terms = vec![
            PauliTerm::parse("X", 0.4).unwrap(),
            PauliTerm::parse("Z", 0.3).unwrap(),
        ];
        let ham = Hamiltonian::from_terms(1, terms).unwrap();
        let s = Statevector::basis(1, 0).unwrap();
        let mut cfg = EvolutionConfig::qdrift(4, 77);
        cfg.resample_per_shot = false;
        let a = qpe(&s, &ham, 3, 100, &cfg, 5).unwrap();
        let b = qpe(&s, &ham, 3, 100, &cfg, 5).unwrap();
        assert_eq!(a, b);
    }
}
