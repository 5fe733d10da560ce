//! Simulator invariants: unitarity, norm preservation, product-formula
//! convergence rates, decomposition round trips, and QPE exactness.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use qsim::{
    evolve, exact_unitary, pauli_decompose, qpe, terms_to_dense, trotter_slice_unitary,
    EvolutionConfig, Hamiltonian, HermitianOperator, Pauli, PauliTerm, Statevector,
};

fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let a = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

fn random_terms(num_qubits: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<PauliTerm> {
    (0..count)
        .map(|_| {
            let ops: Vec<Pauli> = (0..num_qubits)
                .map(|_| match rng.gen_range(0..4) {
                    0 => Pauli::I,
                    1 => Pauli::X,
                    2 => Pauli::Y,
                    _ => Pauli::Z,
                })
                .collect();
            PauliTerm::new(ops, rng.gen::<f64>() * 2.0 - 1.0).unwrap()
        })
        .collect()
}

fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    let gram = m.adjoint() * m;
    gram.symmetric_eigen().eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b)).sqrt()
}

fn random_state(num_qubits: usize, rng: &mut ChaCha8Rng) -> Statevector {
    let dim = 1usize << num_qubits;
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    Statevector::from_amplitudes(amps).unwrap()
}

#[test]
fn exact_path_is_unitary_on_random_hermitians() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for dim in [2usize, 8, 64] {
        let h = random_hermitian(dim, &mut rng);
        let u = exact_unitary(&h, 1.0);
        let eye = DMatrix::<Complex64>::identity(dim, dim);
        let gap = operator_norm(&(&u * u.adjoint() - &eye));
        assert!(gap < 1e-9, "dim {dim}: unitarity gap {gap}");
    }
}

#[test]
fn norm_preserved_across_methods() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for trial in 0..10u64 {
        let terms = random_terms(3, 4, &mut rng);
        let state = random_state(3, &mut rng);
        for cfg in [
            EvolutionConfig::exact(),
            EvolutionConfig::trotter(3),
            EvolutionConfig::qdrift(4, trial),
        ] {
            let out = evolve(&state, &terms, 0.9, &cfg).unwrap();
            assert!((out.norm() - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn trotter_first_order_halving() {
    // operator-norm error vs the exact unitary decreases ~1/2 per doubling
    for seed in [3u64, 5, 8, 13, 21] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let terms = random_terms(3, 4, &mut rng);
        let h = terms_to_dense(3, &terms).unwrap();
        let exact = exact_unitary(&h, 1.0);
        let err = |r: usize| {
            let slice = trotter_slice_unitary(3, &terms, 1.0, r).unwrap();
            let mut w = DMatrix::<Complex64>::identity(8, 8);
            for _ in 0..r {
                w = &slice * w;
            }
            operator_norm(&(w - &exact))
        };
        let errors: Vec<f64> = [4usize, 8, 16, 32].iter().map(|&r| err(r)).collect();
        for w in errors.windows(2) {
            assert!(w[1] < w[0], "seed {seed}: error did not decrease: {errors:?}");
        }
        let ratio = errors[3] / errors[2];
        assert!(
            (0.35..=0.65).contains(&ratio),
            "seed {seed}: halving ratio {ratio} outside band, errors {errors:?}"
        );
    }
}

#[test]
fn qdrift_mean_channel_converges_in_repetitions() {
    // median (over Hamiltonians) fidelity gap of the seed-averaged channel
    // output is non-increasing over N in {1, 2, 5, 10}
    let reps = [1usize, 2, 5, 10];
    let seeds_per_cell = 200u64;
    let mut gaps_per_ham: Vec<Vec<f64>> = Vec::new();
    for ham_seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + ham_seed);
        let terms = random_terms(2, 4, &mut rng);
        let state = random_state(2, &mut rng);
        let exact = evolve(&state, &terms, 1.0, &EvolutionConfig::exact()).unwrap();
        let gaps: Vec<f64> = reps
            .iter()
            .map(|&n| {
                let mean_fid: f64 = (0..seeds_per_cell)
                    .map(|s| {
                        let cfg = EvolutionConfig::qdrift(n, qsim::seed::mix_seed(ham_seed, s));
                        let out = evolve(&state, &terms, 1.0, &cfg).unwrap();
                        exact.fidelity(&out)
                    })
                    .sum::<f64>()
                    / seeds_per_cell as f64;
                1.0 - mean_fid
            })
            .collect();
        gaps_per_ham.push(gaps);
    }
    let median = |k: usize| {
        let mut v: Vec<f64> = gaps_per_ham.iter().map(|g| g[k]).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        (v[4] + v[5]) / 2.0
    };
    let medians: Vec<f64> = (0..reps.len()).map(median).collect();
    for w in medians.windows(2) {
        assert!(w[1] <= w[0] + 1e-12, "medians not monotone: {medians:?}");
    }
}

#[test]
fn qpe_exact_for_representable_phases() {
    // eigenphase k / 2^t on a non-trivial eigenbasis -> outcome k w.p. 1
    let t = 4usize;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let dim = 4usize;
    let base = random_hermitian(dim, &mut rng);
    let eig = base.symmetric_eigen();
    let ks = [3u64, 7, 12, 0];
    let lambdas: Vec<f64> = ks
        .iter()
        .map(|&k| -2.0 * std::f64::consts::PI * (k as f64) / (1u64 << t) as f64)
        .collect();
    let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        lambdas.iter().map(|&l| Complex64::new(l, 0.0)),
    ));
    let h = &eig.eigenvectors * diag * eig.eigenvectors.adjoint();
    let op = HermitianOperator::from_dense(&h.map(|v| {
        // drop numeric dust so the sparse form stays small
        if v.norm() < 1e-14 {
            Complex64::new(0.0, 0.0)
        } else {
            v
        }
    }))
    .unwrap();
    let ham = Hamiltonian::from_operator(&op, 1e-12).unwrap();
    for (col, &k) in ks.iter().enumerate() {
        let amps: Vec<Complex64> = eig.eigenvectors.column(col).iter().cloned().collect();
        let state = Statevector::from_amplitudes(amps).unwrap();
        let hist = qpe(&state, &ham, t, 64, &EvolutionConfig::exact(), 5).unwrap();
        assert_eq!(hist.count_of(k), 64, "eigenphase {k}/2^{t}");
    }
}

#[test]
fn pauli_round_trip_on_random_hermitians() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for num_qubits in [1usize, 2, 3, 4, 5] {
        let dim = 1 << num_qubits;
        let h = random_hermitian(dim, &mut rng);
        let op = HermitianOperator::from_dense(&h).unwrap();
        let terms = pauli_decompose(&op, 0.0).unwrap();
        let back = terms_to_dense(num_qubits, &terms).unwrap();
        let err = (&back - &h).iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(err < 1e-10, "{num_qubits} qubits: round trip error {err}");
    }
}

#[test]
fn qpe_norm_preserved_in_distribution() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let terms = random_terms(2, 4, &mut rng);
    let ham = Hamiltonian::from_terms(2, terms).unwrap();
    let state = random_state(2, &mut rng);
    for cfg in [
        EvolutionConfig::exact(),
        EvolutionConfig::trotter(2),
        EvolutionConfig::qdrift(3, 17),
    ] {
        let plan = qsim::QpePlan::new(&ham, 5, &cfg).unwrap();
        let probs = plan.distribution(&state, 23).unwrap();
        let total: f64 = probs.iter().sum();
        assert!((total - 1.0).abs() < 1e-9, "{:?}: total {total}", cfg.method);
    }
}
