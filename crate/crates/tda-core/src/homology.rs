//! Exact Betti numbers from boundary-matrix ranks.

use crate::boundary::boundary_matrix;
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::rank::{matrix_rank, RankBackend};

/// A Betti number together with a truncation flag: when the complex was
/// built with a clique-dimension cap below k+1, rank d_{k+1} may be
/// missing columns and the value can overestimate the true Betti number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiNumber {
    pub value: usize,
    pub upper_truncated: bool,
}

/// k-th Betti number of the stored complex: dim C_k - rank d_k - rank d_{k+1},
/// with rank d_0 := 0 and rank d_{k+1} := 0 when no (k+1)-simplices exist.
pub fn betti_exact(s: &SimplicialComplex, k: usize, backend: RankBackend) -> Result<BettiNumber> {
    let dim_ck = s.count(k);
    let rank_k = if k >= 1 && k <= s.max_dim() && s.count(k) > 0 {
        let b = boundary_matrix(s, k)?;
        matrix_rank(b.num_rows(), b.columns(), backend)
    } else {
        0
    };
    let rank_k1 = if k + 1 <= s.max_dim() && s.count(k + 1) > 0 {
        let b = boundary_matrix(s, k + 1)?;
        matrix_rank(b.num_rows(), b.columns(), backend)
    } else {
        0
    };
    Ok(BettiNumber {
        value: dim_ck - rank_k - rank_k1,
        upper_truncated: s.is_upper_truncated_for(k),
    })
}

/// All Betti numbers beta_0..=beta_k_max of one complex.
pub fn betti_numbers(
    s: &SimplicialComplex,
    k_max: usize,
    backend: RankBackend,
) -> Result<Vec<BettiNumber>> {
    (0..=k_max).map(|k| betti_exact(s, k, backend)).collect()
}
