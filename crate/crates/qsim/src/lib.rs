//! Minimal statevector simulator with Pauli-term decomposition,
//! exact/Trotter/qDrift time evolution, quantum phase estimation and
//! seeded shot sampling.

mod error;
mod evolve;
mod pauli;
mod qpe;
pub mod seed;
mod state;

pub use error::{QsimError, Result};
pub use evolve::{
    evolve, exact_unitary, trotter_order, trotter_slice_unitary, EvolutionConfig, EvolutionMethod,
};
pub use pauli::{pauli_decompose, terms_to_dense, HermitianOperator, Pauli, PauliMasks, PauliTerm};
pub use qpe::{qpe, zero_phase_fraction, Hamiltonian, PhaseHistogram, QpePlan};
pub use state::Statevector;
