//! Multivariate Betti curves, the weighted Minkowski curve distance, the
//! Gaussian topological kernel, conventional comparison kernels, Gram
//! matrices and RMSE/PSD diagnostics.

mod conventional;
mod curve;
mod distance;
mod error;
mod gram;
mod perturb;

pub use conventional::ConventionalKernel;
pub use curve::{betti_curve_matrix, exact_betti_curve_matrix, BettiCurveMatrix};
pub use distance::{curve_distance, kernel_induced_distance, topo_kernel, KernelParams};
pub use error::{KernelError, Result};
pub use gram::{gram_matrix, psd_check, rmse, GramMatrix};
pub use perturb::{perturbation_bound_check, perturbation_ratio_with_factors};
