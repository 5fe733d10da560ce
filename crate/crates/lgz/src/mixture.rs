//! Uniform sampling of clique basis states.
//!
//! The estimator's input is the uniform mixture over (k+1)-clique basis
//! states. Sampling one basis state per shot reproduces the measurement
//! statistics of the CNOT-copy-and-discard construction while halving the
//! qubit budget.

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use tda_core::CliqueSet;

use crate::error::{LgzError, Result};

pub struct CliqueMixtureSampler {
    members: Vec<u64>,
    rng: ChaCha8Rng,
}

impl CliqueMixtureSampler {
    pub fn new(cliques: &CliqueSet, seed: u64) -> Result<Self> {
        if cliques.is_empty() {
            return Err(LgzError::InvalidInput("cannot sample from an empty clique set".into()));
        }
        Ok(Self { members: cliques.members().to_vec(), rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    pub fn from_bitstrings(members: Vec<u64>, seed: u64) -> Result<Self> {
        if members.is_empty() {
            return Err(LgzError::InvalidInput("cannot sample from an empty clique set".into()));
        }
        Ok(Self { members, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    /// Draw one clique bitstring uniformly.
    pub fn draw(&mut self) -> u64 {
        let idx = self.rng.gen_range(0..self.members.len());
        self.members[idx]
    }

    pub fn support(&self) -> &[u64] {
        &self.members
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tda_core::{enumerate_cliques, SkeletonGraph};

    #[test]
    fn singleton_always_returned() {
        let mut s = CliqueMixtureSampler::from_bitstrings(vec![0b101], 3).unwrap();
        for _ in 0..20 {
            assert_eq!(s.draw(), 0b101);
        }
    }

    #[test]
    fn two_vertices_near_uniform() {
        let g = SkeletonGraph::new(2).unwrap();
        let cliques = enumerate_cliques(&g, 0).unwrap();
        let mut s = CliqueMixtureSampler::new(&cliques[0], 17).unwrap();
        let draws = 10_000;
        let mut ones = 0usize;
        for _ in 0..draws {
            if s.draw() == 0b01 {
                ones += 1;
            }
        }
        // 3 sigma band around p = 0.5
        let sigma = (0.25f64 / draws as f64).sqrt();
        let freq = ones as f64 / draws as f64;
        assert!((freq - 0.5).abs() < 3.0 * sigma, "frequency {freq}");
    }

    #[test]
    fn draws_have_clique_weight() {
        let mut g = SkeletonGraph::new(4).unwrap();
        for (a, b) in [(0, 1), (1, 2), (0, 2), (2, 3)] {
            g.add_edge(a, b).unwrap();
        }
        let cliques = enumerate_cliques(&g, 1).unwrap();
        let mut s = CliqueMixtureSampler::new(&cliques[1], 5).unwrap();
        for _ in 0..100 {
            assert_eq!(s.draw().count_ones(), 2);
        }
    }

    #[test]
    fn empty_set_rejected() {
        let g = SkeletonGraph::new(3).unwrap();
        let cliques = enumerate_cliques(&g, 1).unwrap();
        assert!(CliqueMixtureSampler::new(&cliques[1], 0).is_err());
    }
}
