//! The zero-phase Betti estimator: phase-estimate exp(-i B / lambda) on
//! uniformly drawn clique basis states and count all-zeros ancilla outcomes.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use qsim::seed::{hash_token, mix_seed};
use qsim::{EvolutionConfig, EvolutionMethod, Hamiltonian, HermitianOperator, Statevector};
use tda_core::{SimplicialComplex, SkeletonGraph};

use crate::dirac::{dirac_operator, rescale_factor, DiracOperator};
use crate::error::{LgzError, Result};
use crate::mixture::CliqueMixtureSampler;

/// Configuration of one estimator run.
#[derive(Debug, Clone)]
pub struct LgzConfig {
    /// Phase-estimation ancilla count.
    pub t: usize,
    /// Number of measurement repetitions M.
    pub shots: u64,
    pub evolution: EvolutionConfig,
    /// Master seed for clique draws and outcome sampling.
    pub seed: u64,
    /// Simulate the auxiliary Hamming-weight register |k+1> alongside the
    /// clique register. The register is inert under I (x) B, so estimates
    /// are unchanged; the flag exists for circuit-layout studies.
    pub include_weight_register: bool,
    /// Outcomes y with min(y, 2^t - y) <= halfwidth count as phase zero.
    /// The default 0 counts only the exact all-zeros outcome.
    pub zero_bin_halfwidth: u64,
}

impl LgzConfig {
    pub fn new(t: usize, shots: u64, evolution: EvolutionConfig, seed: u64) -> Self {
        Self {
            t,
            shots,
            evolution,
            seed,
            include_weight_register: false,
            zero_bin_halfwidth: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(LgzError::InvalidInput("ancilla count t must be >= 1".into()));
        }
        if self.shots == 0 {
            return Err(LgzError::InvalidInput("shots must be >= 1".into()));
        }
        Ok(())
    }
}

/// Outcome of one estimator run. `beta_estimate` is the exact integer ratio
/// zero_count * clique_count / shots evaluated in floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct LgzEstimate {
    pub k: usize,
    pub clique_count: u64,
    pub zero_count: u64,
    pub shots: u64,
    pub beta_estimate: f64,
    pub rescale_factor: f64,
}

impl LgzEstimate {
    fn new(k: usize, clique_count: u64, zero_count: u64, shots: u64, rescale: f64) -> Self {
        let beta_estimate = if shots == 0 {
            0.0
        } else {
            (zero_count * clique_count) as f64 / shots as f64
        };
        Self { k, clique_count, zero_count, shots, beta_estimate, rescale_factor: rescale }
    }
}

fn validate_complex_graph(s: &SimplicialComplex, g: &SkeletonGraph, k: usize) -> Result<()> {
    if s.n() != g.n() {
        return Err(LgzError::InvalidInput(format!(
            "complex has {} vertices, graph has {}",
            s.n(),
            g.n()
        )));
    }
    for edge in s.simplices(1) {
        if !g.has_edge(edge[0], edge[1]) {
            return Err(LgzError::InvalidInput(format!(
                "complex edge {edge:?} is not an edge of the skeleton graph"
            )));
        }
    }
    if s.is_upper_truncated_for(k) {
        return Err(LgzError::InvalidInput(format!(
            "complex is truncated below dimension {}; enumerate cliques to at least k+1",
            k + 1
        )));
    }
    Ok(())
}

struct PreparedRun {
    plan: qsim::QpePlan,
    /// Bits to OR into each clique index (the optional weight register).
    aux_prefix: u64,
    system_qubits: usize,
}

fn prepare_run(
    b: &DiracOperator,
    k: usize,
    cfg_t: usize,
    evolution: &EvolutionConfig,
    include_weight_register: bool,
) -> Result<PreparedRun> {
    let n = b.n();
    let lambda = rescale_factor(b);
    let mut entries: Vec<(u64, u64, Complex64)> = b
        .operator()
        .entries()
        .iter()
        .map(|&(r, c, v)| (r, c, v / lambda))
        .collect();
    let (system_qubits, aux_prefix) = if include_weight_register {
        // ceil(log2(n+1)) bits hold the weight tag k+1 <= n
        let aux = (u64::BITS - (n as u64).leading_zeros()) as usize;
        let base = entries.clone();
        entries.clear();
        for a in 0..(1u64 << aux) {
            let offset = a << n;
            entries.extend(base.iter().map(|&(r, c, v)| (r | offset, c | offset, v)));
        }
        (n + aux, ((k as u64) + 1) << n)
    } else {
        (n, 0)
    };
    let op = HermitianOperator::from_triplets(system_qubits, entries)?;
    let ham = build_hamiltonian(&op, evolution)?;
    let plan = qsim::QpePlan::new(&ham, cfg_t, evolution)?;
    Ok(PreparedRun { plan, aux_prefix, system_qubits })
}

/// The exact path needs the dense operator; the product formulas only need
/// the Pauli terms, so larger sparse instances stay viable under qDrift.
fn build_hamiltonian(op: &HermitianOperator, evolution: &EvolutionConfig) -> Result<Hamiltonian> {
    match evolution.method {
        EvolutionMethod::Exact => Ok(Hamiltonian::from_operator(op, evolution.prune_tol)?),
        _ => {
            let terms = qsim::pauli_decompose(op, evolution.prune_tol)?;
            Ok(Hamiltonian::from_terms(op.num_qubits(), terms)?)
        }
    }
}

fn zero_bin_mass(dist: &[f64], t: usize, halfwidth: u64) -> f64 {
    let size = 1u64 << t;
    dist.iter()
        .enumerate()
        .filter(|&(y, _)| {
            let y = y as u64;
            y.min(size - y) <= halfwidth
        })
        .map(|(_, &p)| p)
        .sum()
}

fn is_zero_outcome(y: u64, t: usize, halfwidth: u64) -> bool {
    let size = 1u64 << t;
    y.min(size - y) <= halfwidth
}

fn sample_from_cumulative<R: Rng>(cum: &[f64], rng: &mut R) -> u64 {
    let u: f64 = rng.gen();
    cum.partition_point(|&c| c <= u).min(cum.len() - 1) as u64
}

fn cumulative(dist: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    dist.iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect()
}

/// Run the estimator for order k on a complex built from graph `g`.
///
/// Per shot: draw a clique basis state uniformly, phase-estimate the
/// rescaled Dirac unitary on it, and record whether the ancilla outcome is
/// zero. The estimate is the zero fraction scaled by the clique count.
pub fn lgz_estimate(
    s: &SimplicialComplex,
    g: &SkeletonGraph,
    k: usize,
    cfg: &LgzConfig,
) -> Result<LgzEstimate> {
    cfg.validate()?;
    validate_complex_graph(s, g, k)?;
    let cliques = s.simplices_as_bits(k);
    if cliques.is_empty() {
        return Ok(LgzEstimate::new(k, 0, 0, 0, 1.0));
    }
    let b = dirac_operator(s)?;
    let lambda = rescale_factor(&b);
    let run = prepare_run(&b, k, cfg.t, &cfg.evolution, cfg.include_weight_register)?;

    let mut sampler =
        CliqueMixtureSampler::from_bitstrings(cliques.clone(), mix_seed(cfg.seed, hash_token("mixture")))?;
    let mut outcome_rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, hash_token("outcome")));

    let stochastic =
        cfg.evolution.method == EvolutionMethod::Qdrift && cfg.evolution.resample_per_shot;
    let mut cache: HashMap<u64, Vec<f64>> = HashMap::new();
    let mut zero_count = 0u64;
    for shot in 0..cfg.shots {
        let j = sampler.draw();
        let index = j | run.aux_prefix;
        let outcome = if stochastic {
            let state = Statevector::basis(run.system_qubits, index)?;
            let dist =
                run.plan.distribution(&state, mix_seed(cfg.evolution.seed, shot))?;
            sample_from_cumulative(&cumulative(&dist), &mut outcome_rng)
        } else {
            if !cache.contains_key(&index) {
                let state = Statevector::basis(run.system_qubits, index)?;
                let dist = run.plan.distribution(&state, cfg.evolution.seed)?;
                cache.insert(index, cumulative(&dist));
            }
            sample_from_cumulative(&cache[&index], &mut outcome_rng)
        };
        if is_zero_outcome(outcome, cfg.t, cfg.zero_bin_halfwidth) {
            zero_count += 1;
        }
    }
    Ok(LgzEstimate::new(k, cliques.len() as u64, zero_count, cfg.shots, lambda))
}

/// Noise-free oracle: the exact probability of a zero ancilla outcome,
/// averaged over every clique basis state without sampling. For qDrift the
/// probability is averaged over `qdrift_draws` seeded product draws.
pub fn exact_zero_phase_probability(
    s: &SimplicialComplex,
    k: usize,
    t: usize,
    evolution: &EvolutionConfig,
    qdrift_draws: u64,
) -> Result<f64> {
    if t == 0 {
        return Err(LgzError::InvalidInput("ancilla count t must be >= 1".into()));
    }
    let cliques = s.simplices_as_bits(k);
    if cliques.is_empty() {
        return Err(LgzError::InvalidInput("empty clique set has no zero-phase probability".into()));
    }
    let b = dirac_operator(s)?;
    let run = prepare_run(&b, k, t, evolution, false)?;
    let stochastic = evolution.method == EvolutionMethod::Qdrift;
    let draws = if stochastic {
        if qdrift_draws == 0 {
            return Err(LgzError::InvalidInput("qdrift_draws must be >= 1".into()));
        }
        qdrift_draws
    } else {
        1
    };
    let mut total = 0.0;
    for &j in &cliques {
        let state = Statevector::basis(run.system_qubits, j)?;
        for d in 0..draws {
            let noise_seed =
                if stochastic { mix_seed(evolution.seed, d) } else { evolution.seed };
            let dist = run.plan.distribution(&state, noise_seed)?;
            total += zero_bin_mass(&dist, t, 0);
        }
    }
    Ok(total / (cliques.len() as u64 * draws) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsim::EvolutionConfig;
    use tda_core::{build_complex, enumerate_cliques, vr_skeleton, distance_matrix, PointCloud, SkeletonGraph};

    fn single_edge() -> (SimplicialComplex, SkeletonGraph) {
        let mut g = SkeletonGraph::new(2).unwrap();
        g.add_edge(0, 1).unwrap();
        let s = build_complex(&enumerate_cliques(&g, 1).unwrap()).unwrap();
        (s, g)
    }

    fn isolated(n: usize) -> (SimplicialComplex, SkeletonGraph) {
        let g = SkeletonGraph::new(n).unwrap();
        let s = build_complex(&enumerate_cliques(&g, 1).unwrap()).unwrap();
        (s, g)
    }

    fn four_cycle() -> (SimplicialComplex, SkeletonGraph) {
        let c = PointCloud::new(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        let g = vr_skeleton(&distance_matrix(&c), 1.2).unwrap();
        let s = build_complex(&enumerate_cliques(&g, 2).unwrap()).unwrap();
        (s, g)
    }

    #[test]
    fn zero_operator_every_shot_is_zero_phase() {
        let (s, g) = isolated(3);
        let cfg = LgzConfig::new(4, 64, EvolutionConfig::exact(), 9);
        let est = lgz_estimate(&s, &g, 0, &cfg).unwrap();
        assert_eq!(est.zero_count, 64);
        assert_eq!(est.clique_count, 3);
        assert_eq!(est.beta_estimate, 3.0);
        assert_eq!(est.rescale_factor, 1.0);
    }

    #[test]
    fn empty_clique_set_short_circuits() {
        let (s, g) = isolated(3);
        let cfg = LgzConfig::new(4, 64, EvolutionConfig::exact(), 9);
        let est = lgz_estimate(&s, &g, 1, &cfg).unwrap();
        assert_eq!(est.shots, 0);
        assert_eq!(est.beta_estimate, 0.0);
        assert_eq!(est.clique_count, 0);
    }

    #[test]
    fn single_edge_beta0_near_one() {
        let (s, g) = single_edge();
        let cfg = LgzConfig::new(6, 4000, EvolutionConfig::exact(), 1234);
        let est = lgz_estimate(&s, &g, 0, &cfg).unwrap();
        // target normalized fraction 1/2, three binomial sigma band
        let p = est.zero_count as f64 / est.shots as f64;
        let sigma = (0.25f64 / est.shots as f64).sqrt();
        assert!((p - 0.5).abs() <= 3.0 * sigma, "zero fraction {p}");
        assert!((est.beta_estimate - 1.0).abs() <= 6.0 * sigma, "beta {}", est.beta_estimate);
    }

    #[test]
    fn oracle_single_edge_converges_to_half() {
        let (s, _) = single_edge();
        let p = exact_zero_phase_probability(&s, 0, 9, &EvolutionConfig::exact(), 1).unwrap();
        assert!((p - 0.5).abs() < 1e-3, "p = {p}");
    }

    #[test]
    fn oracle_leakage_decreases_with_t_on_four_cycle() {
        let (s, _) = four_cycle();
        let spectral = 0.25; // beta_1 = 1 over |Cl_1| = 4
        let errs: Vec<f64> = [4usize, 6, 8]
            .iter()
            .map(|&t| {
                let p =
                    exact_zero_phase_probability(&s, 1, t, &EvolutionConfig::exact(), 1).unwrap();
                (p - spectral).abs()
            })
            .collect();
        assert!(errs[1] <= errs[0] + 1e-12, "{errs:?}");
        assert!(errs[2] <= errs[1] + 1e-12, "{errs:?}");
    }

    #[test]
    fn estimator_matches_oracle_within_three_sigma() {
        let (s, g) = four_cycle();
        let t = 7;
        let shots = 4000;
        let p_star = exact_zero_phase_probability(&s, 1, t, &EvolutionConfig::exact(), 1).unwrap();
        let cfg = LgzConfig::new(t, shots, EvolutionConfig::exact(), 777);
        let est = lgz_estimate(&s, &g, 1, &cfg).unwrap();
        let sigma = (p_star * (1.0 - p_star) / shots as f64).sqrt();
        let p_hat = est.zero_count as f64 / shots as f64;
        assert!((p_hat - p_star).abs() <= 3.0 * sigma, "p_hat {p_hat} p* {p_star}");
        // Equation-level integer identity
        assert_eq!(
            est.beta_estimate,
            (est.zero_count * est.clique_count) as f64 / est.shots as f64
        );
    }

    #[test]
    fn weight_register_leaves_statistics_unchanged() {
        let (s, g) = single_edge();
        let mut cfg = LgzConfig::new(5, 500, EvolutionConfig::exact(), 42);
        let plain = lgz_estimate(&s, &g, 0, &cfg).unwrap();
        cfg.include_weight_register = true;
        let tagged = lgz_estimate(&s, &g, 0, &cfg).unwrap();
        assert_eq!(plain.zero_count, tagged.zero_count);
        assert_eq!(plain.beta_estimate, tagged.beta_estimate);
    }

    #[test]
    fn truncated_complex_rejected() {
        // K_5 enumerated only to edges: beta_1 would be overestimated
        let mut g = SkeletonGraph::new(5).unwrap();
        for i in 0..5 {
            for j in (i + 1)..5 {
                g.add_edge(i, j).unwrap();
            }
        }
        let s = build_complex(&enumerate_cliques(&g, 1).unwrap()).unwrap();
        let cfg = LgzConfig::new(4, 10, EvolutionConfig::exact(), 0);
        assert!(lgz_estimate(&s, &g, 1, &cfg).is_err());
    }
}
