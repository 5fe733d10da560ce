//! Abstract simplicial complexes with canonical simplex ordering.

use std::collections::HashSet;

use crate::error::{Result, TdaError};
use crate::graph::CliqueSet;

/// A downward-closed family of vertex subsets, stored per dimension as a
/// sorted, duplicate-free list of sorted vertex tuples. The sorted-tuple
/// ordering gives canonical row/column indices for boundary matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    n: usize,
    // simplices[p] = sorted list of sorted (p+1)-vertex tuples
    simplices: Vec<Vec<Vec<usize>>>,
    // Clique-enumeration cap this complex was built with; simplices above
    // this dimension may exist in the underlying space but are not stored.
    truncation_dim: Option<usize>,
}

impl SimplicialComplex {
    /// Build directly from per-dimension simplex lists. Lists are sorted
    /// and deduplicated; downward closure is validated.
    pub fn new(n: usize, mut simplices: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        while simplices.last().is_some_and(|l| l.is_empty()) {
            simplices.pop();
        }
        for (p, list) in simplices.iter_mut().enumerate() {
            for s in list.iter_mut() {
                if s.len() != p + 1 {
                    return Err(TdaError::Structural(format!(
                        "simplex {s:?} stored at dimension {p}"
                    )));
                }
                s.sort_unstable();
                s.dedup();
                if s.len() != p + 1 {
                    return Err(TdaError::Structural(format!("repeated vertex in simplex {s:?}")));
                }
                if s.iter().any(|&v| v >= n) {
                    return Err(TdaError::Structural(format!("vertex out of range in {s:?}")));
                }
            }
            list.sort_unstable();
            list.dedup();
        }
        let complex = Self { n, simplices, truncation_dim: None };
        complex.check_downward_closure()?;
        Ok(complex)
    }

    fn check_downward_closure(&self) -> Result<()> {
        for p in 1..self.simplices.len() {
            let faces: HashSet<&[usize]> =
                self.simplices[p - 1].iter().map(|s| s.as_slice()).collect();
            for s in &self.simplices[p] {
                for j in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(j);
                    if !faces.contains(face.as_slice()) {
                        return Err(TdaError::Structural(format!(
                            "face {face:?} of simplex {s:?} is missing"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest dimension with at least one stored simplex; a complex of
    /// isolated vertices has max_dim 0.
    pub fn max_dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    /// Simplices of dimension `p` in canonical order (empty above max_dim).
    pub fn simplices(&self, p: usize) -> &[Vec<usize>] {
        self.simplices.get(p).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices(p).len()
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(|l| l.len()).sum()
    }

    pub fn truncation_dim(&self) -> Option<usize> {
        self.truncation_dim
    }

    /// Whether the stored simplices might miss dimension-(k+1) faces needed
    /// for an exact Betti number of order k.
    pub fn is_upper_truncated_for(&self, k: usize) -> bool {
        match self.truncation_dim {
            None => false,
            Some(cap) => {
                // Enumeration that stopped at `cap` only hides simplices when
                // the top stored dimension actually reached the cap and the
                // cap is below the combinatorial maximum n-1.
                k + 1 > cap && self.max_dim() == cap && cap < self.n.saturating_sub(1)
            }
        }
    }

    /// Whether this complex's simplex sets are a subset of `other`'s.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        for p in 0..self.simplices.len() {
            let sup: HashSet<&[usize]> = other.simplices(p).iter().map(|s| s.as_slice()).collect();
            if !self.simplices(p).iter().all(|s| sup.contains(s.as_slice())) {
                return false;
            }
        }
        true
    }

    /// k-simplices re-encoded as vertex bitstrings, sorted numerically.
    pub fn simplices_as_bits(&self, p: usize) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .simplices(p)
            .iter()
            .map(|s| s.iter().fold(0u64, |acc, &v| acc | (1 << v)))
            .collect();
        out.sort_unstable();
        out
    }
}

fn bits_to_tuple(bits: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    let mut b = bits;
    while b != 0 {
        out.push(b.trailing_zeros() as usize);
        b &= b - 1;
    }
    out
}

/// Assemble a simplicial complex from downward-closed clique sets, with
/// (k+1)-cliques becoming k-simplices.
pub fn build_complex(cliques: &[CliqueSet]) -> Result<SimplicialComplex> {
    if cliques.is_empty() {
        return Err(TdaError::InvalidInput("empty clique list".into()));
    }
    let n = cliques[0].n();
    for (k, cl) in cliques.iter().enumerate() {
        if cl.order() != k {
            return Err(TdaError::Structural(format!(
                "clique set at position {k} has order {}",
                cl.order()
            )));
        }
        if cl.n() != n {
            return Err(TdaError::Structural("clique sets disagree on vertex count".into()));
        }
    }
    let cap = cliques.len() - 1;
    let simplices: Vec<Vec<Vec<usize>>> = cliques
        .iter()
        .map(|cl| {
            let mut list: Vec<Vec<usize>> = cl.members().iter().map(|&m| bits_to_tuple(m)).collect();
            list.sort_unstable();
            list
        })
        .collect();
    let mut complex = SimplicialComplex::new(n, simplices)?;
    complex.truncation_dim = Some(cap);
    Ok(complex)
}

/// Alternating sum of simplex counts.
pub fn euler_characteristic(s: &SimplicialComplex) -> i64 {
    (0..=s.max_dim())
        .map(|p| {
            let c = s.count(p) as i64;
            if p % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum()
}
