//! Time evolution under a Pauli-term Hamiltonian: exact matrix exponential,
//! first-order Trotter product, or the qDrift stochastic compiler.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::error::{QsimError, Result};
use crate::pauli::{terms_to_dense, PauliTerm};
use crate::state::Statevector;

/// Hamiltonian simulation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvolutionMethod {
    /// Reference path: dense matrix exponential.
    Exact,
    /// First-order product formula with `repetitions` slices.
    Trotter,
    /// Randomized compiler drawing `repetitions` terms per unit time.
    Qdrift,
}

impl EvolutionMethod {
    pub fn name(self) -> &'static str {
        match self {
            EvolutionMethod::Exact => "exact",
            EvolutionMethod::Trotter => "trotter",
            EvolutionMethod::Qdrift => "qdrift",
        }
    }
}

/// Configuration for one evolution/QPE run.
#[derive(Debug, Clone)]
pub struct EvolutionConfig {
    pub method: EvolutionMethod,
    /// Trotter number r, or qDrift sample count N, per unit time.
    pub repetitions: usize,
    /// Base seed for qDrift term draws.
    pub seed: u64,
    /// Pauli coefficients with |c| <= prune_tol are discarded.
    pub prune_tol: f64,
    /// When false, one qDrift product is drawn from `seed` and reused for
    /// every shot instead of resampling per shot.
    pub resample_per_shot: bool,
}

impl EvolutionConfig {
    pub fn exact() -> Self {
        Self::new(EvolutionMethod::Exact, 1, 0)
    }

    pub fn trotter(repetitions: usize) -> Self {
        Self::new(EvolutionMethod::Trotter, repetitions, 0)
    }

    pub fn qdrift(repetitions: usize, seed: u64) -> Self {
        Self::new(EvolutionMethod::Qdrift, repetitions, seed)
    }

    pub fn new(method: EvolutionMethod, repetitions: usize, seed: u64) -> Self {
        Self { method, repetitions, seed, prune_tol: 1e-12, resample_per_shot: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(QsimError::InvalidInput("repetitions must be >= 1".into()));
        }
        if self.prune_tol < 0.0 {
            return Err(QsimError::InvalidInput("prune_tol must be >= 0".into()));
        }
        Ok(())
    }
}

/// Deterministic Trotter term order: descending |coefficient|, ties broken
/// by lexicographic Pauli word.
pub fn trotter_order(terms: &[PauliTerm]) -> Vec<&PauliTerm> {
    let mut ordered: Vec<&PauliTerm> = terms.iter().collect();
    ordered.sort_by(|a, b| {
        b.coefficient()
            .abs()
            .partial_cmp(&a.coefficient().abs())
            .unwrap()
            .then_with(|| a.ops().cmp(b.ops()))
    });
    ordered
}

const DENSE_QUBIT_BUDGET: usize = 12;

/// exp(-i * time * H) for H given by a dense Hermitian matrix.
pub fn exact_unitary(h: &DMatrix<Complex64>, time: f64) -> DMatrix<Complex64> {
    let scaled = h.map(|v| v * Complex64::new(0.0, -time));
    scaled.exp()
}

fn dense_budget_check(num_qubits: usize) -> Result<()> {
    if num_qubits > DENSE_QUBIT_BUDGET {
        return Err(QsimError::Resource(format!(
            "dense path needs {num_qubits} qubits, budget is {DENSE_QUBIT_BUDGET}"
        )));
    }
    Ok(())
}

/// One first-order Trotter slice `prod_j exp(-i * time * c_j P_j / r)` as a
/// dense matrix, terms applied to the state in `trotter_order`.
pub fn trotter_slice_unitary(
    num_qubits: usize,
    terms: &[PauliTerm],
    time: f64,
    repetitions: usize,
) -> Result<DMatrix<Complex64>> {
    dense_budget_check(num_qubits)?;
    let dim = 1usize << num_qubits;
    let mut m = DMatrix::<Complex64>::identity(dim, dim);
    for term in trotter_order(terms) {
        let masks = term.masks();
        let theta = time * term.coefficient() / repetitions as f64;
        // rotate every column of the accumulated matrix
        for c in 0..dim {
            let mut col = m.column_mut(c);
            apply_rotation_slice(col.as_mut_slice(), &masks, theta);
        }
    }
    Ok(m)
}

pub(crate) fn apply_rotation_slice(
    amps: &mut [Complex64],
    masks: &crate::pauli::PauliMasks,
    theta: f64,
) {
    let (cos, sin) = (theta.cos(), theta.sin());
    let mi_sin = Complex64::new(0.0, -sin);
    if masks.x == 0 {
        let plus = Complex64::new(cos, -sin);
        let minus = Complex64::new(cos, sin);
        for (b, amp) in amps.iter_mut().enumerate() {
            *amp *= if (b as u64 & masks.z).count_ones() % 2 == 0 { plus } else { minus };
        }
        return;
    }
    let high = 1u64 << (63 - masks.x.leading_zeros());
    for b in 0..amps.len() as u64 {
        if b & high != 0 {
            continue;
        }
        let partner = (b ^ masks.x) as usize;
        let pa = masks.phase(b);
        let pb = masks.phase(b ^ masks.x);
        let va = amps[b as usize];
        let vb = amps[partner];
        amps[b as usize] = cos * va + mi_sin * (pb * vb);
        amps[partner] = cos * vb + mi_sin * (pa * va);
    }
}

fn prune<'a>(terms: &'a [PauliTerm], tol: f64) -> Vec<&'a PauliTerm> {
    terms.iter().filter(|t| t.coefficient().abs() > tol).collect()
}

/// Draw a qDrift index sequence: i.i.d. with probability |c_j| / lambda.
pub(crate) struct QdriftSampler {
    cumulative: Vec<f64>,
    pub lambda: f64,
}

impl QdriftSampler {
    pub fn new(coefficients: &[f64]) -> Self {
        let lambda: f64 = coefficients.iter().map(|c| c.abs()).sum();
        let mut acc = 0.0;
        let cumulative = coefficients
            .iter()
            .map(|c| {
                acc += c.abs();
                acc
            })
            .collect();
        Self { cumulative, lambda }
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen::<f64>() * self.lambda;
        self.cumulative.partition_point(|&c| c <= u).min(self.cumulative.len() - 1)
    }
}

fn validate_terms(state: &Statevector, terms: &[PauliTerm]) -> Result<()> {
    for t in terms {
        if t.num_qubits() != state.num_qubits() {
            return Err(QsimError::InvalidInput(format!(
                "term {} has {} qubits but state has {}",
                t.word(),
                t.num_qubits(),
                state.num_qubits()
            )));
        }
    }
    Ok(())
}

/// Evolve a state for `time` under `H = sum_j c_j P_j` with the configured
/// method.
pub fn evolve(
    state: &Statevector,
    terms: &[PauliTerm],
    time: f64,
    cfg: &EvolutionConfig,
) -> Result<Statevector> {
    cfg.validate()?;
    validate_terms(state, terms)?;
    let n = state.num_qubits();
    let active = prune(terms, cfg.prune_tol);
    match cfg.method {
        EvolutionMethod::Exact => {
            dense_budget_check(n)?;
            let owned: Vec<PauliTerm> = active.iter().map(|&t| t.clone()).collect();
            let h = terms_to_dense(n, &owned)?;
            let u = exact_unitary(&h, time);
            let amps = {
                let v = nalgebra::DVector::from_column_slice(state.amplitudes());
                (u * v).data.into()
            };
            Statevector::from_amplitudes(amps)
        }
        EvolutionMethod::Trotter => {
            let r = cfg.repetitions;
            let owned: Vec<PauliTerm> = active.iter().map(|&t| t.clone()).collect();
            let ordered: Vec<_> = trotter_order(&owned)
                .into_iter()
                .map(|t| (t.masks(), time * t.coefficient() / r as f64))
                .collect();
            let mut out = state.clone();
            for _ in 0..r {
                for (masks, theta) in &ordered {
                    out.apply_pauli_rotation(masks, *theta);
                }
            }
            Ok(out)
        }
        EvolutionMethod::Qdrift => {
            let mut out = state.clone();
            if active.is_empty() {
                return Ok(out);
            }
            let coeffs: Vec<f64> = active.iter().map(|t| t.coefficient()).collect();
            let sampler = QdriftSampler::new(&coeffs);
            if sampler.lambda == 0.0 {
                return Ok(out);
            }
            let n_draws = cfg.repetitions;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..n_draws {
                let j = sampler.draw(&mut rng);
                let sign = coeffs[j].signum();
                let theta = sign * sampler.lambda * time / n_draws as f64;
                out.apply_pauli_rotation(&active[j].masks(), theta);
            }
            Ok(out)
        }
    }
}
