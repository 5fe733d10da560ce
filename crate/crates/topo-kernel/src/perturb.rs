//! Entrywise multiplicative-error bound: perturbing every entry of a curve
//! matrix by independent factors in [1-delta, 1+delta] keeps the relative
//! Frobenius error within delta.

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::curve::BettiCurveMatrix;
use crate::error::{KernelError, Result};

/// Relative Frobenius error of the perturbation with explicit factors.
/// Returns 0 for a zero matrix (vacuous case).
pub fn perturbation_ratio_with_factors(
    exact: &BettiCurveMatrix,
    factors: &[f64],
) -> Result<f64> {
    let total: usize = exact.values().iter().map(|r| r.len()).sum();
    if factors.len() != total {
        return Err(KernelError::InvalidInput(format!(
            "expected {total} factors, got {}",
            factors.len()
        )));
    }
    let base = exact.frobenius_norm();
    if base == 0.0 {
        return Ok(0.0);
    }
    let mut acc = 0.0;
    let mut idx = 0;
    for row in exact.values() {
        for &v in row {
            let diff = v * factors[idx] - v;
            acc += diff * diff;
            idx += 1;
        }
    }
    Ok(acc.sqrt() / base)
}

/// Draw one seeded perturbation with factors uniform in [1-delta, 1+delta]
/// and check the relative Frobenius bound. Holds for every draw; a small
/// headroom absorbs floating-point rounding at the boundary.
pub fn perturbation_bound_check(exact: &BettiCurveMatrix, delta: f64, seed: u64) -> Result<bool> {
    if !(delta > 0.0) {
        return Err(KernelError::InvalidInput(format!("delta must be > 0, got {delta}")));
    }
    let total: usize = exact.values().iter().map(|r| r.len()).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors: Vec<f64> =
        (0..total).map(|_| 1.0 + delta * (2.0 * rng.gen::<f64>() - 1.0)).collect();
    let ratio = perturbation_ratio_with_factors(exact, &factors)?;
    Ok(ratio <= delta * (1.0 + 1e-12))
}
