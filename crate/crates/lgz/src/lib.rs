//! The LGZ Betti-number estimator: Dirac-operator construction and
//! rescaling, clique-mixture preparation, phase-estimation runs, the
//! zero-phase estimator and an exact-probability oracle.

mod dirac;
mod error;
mod estimate;
mod mixture;

pub use dirac::{
    condition_diagnostics, dirac_operator, rescale_factor, ConditionDiagnostics, DiracOperator,
    EIGENVALUE_ZERO_TOL, MAX_DIAG_VERTICES, MAX_LGZ_VERTICES,
};
pub use error::{LgzError, Result};
pub use estimate::{exact_zero_phase_probability, lgz_estimate, LgzConfig, LgzEstimate};
pub use mixture::CliqueMixtureSampler;
