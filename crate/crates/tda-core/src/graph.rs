//! Threshold graphs and bitset clique enumeration.

use crate::cloud::DistanceMatrix;
use crate::error::{Result, TdaError};

/// Maximum vertex count supported by the bitset representation.
pub const MAX_VERTICES: usize = 64;

/// Undirected simple graph on vertices `0..n`, stored as adjacency bitsets.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SkeletonGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(TdaError::Resource(format!(
                "vertex count {n} outside supported range 1..={MAX_VERTICES}"
            )));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(TdaError::InvalidInput(format!("vertex out of range: ({i},{j})")));
        }
        if i == j {
            return Err(TdaError::InvalidInput(format!("self-loop at {i}")));
        }
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && i < self.n && j < self.n && (self.adj[i] >> j) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Unordered edge pairs (i, j) with i < j, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let mut bits = self.adj[i] & !((1u64 << i) | (1u64.wrapping_shl(i as u32) - 1));
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                out.push((i, j));
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Number of connected components (isolated vertices count).
    pub fn connected_components(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut comps = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            comps += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                let mut bits = self.adj[v];
                while bits != 0 {
                    let u = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        comps
    }
}

/// Vietoris-Rips skeleton: edge `{i, j}` present iff `d(i, j) <= eps`.
pub fn vr_skeleton(dm: &DistanceMatrix, eps: f64) -> Result<SkeletonGraph> {
    if !(eps >= 0.0) {
        return Err(TdaError::InvalidInput(format!("eps must be >= 0, got {eps}")));
    }
    let n = dm.n();
    let mut g = SkeletonGraph::new(n)?;
    for i in 0..n {
        for j in (i + 1)..n {
            if dm.get(i, j) <= eps {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// The (k+1)-cliques of a graph, encoded as bitstrings of Hamming weight
/// k+1 whose set bits index the clique vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueSet {
    n: usize,
    k: usize,
    members: Vec<u64>, // sorted ascending by numeric value
}

impl CliqueSet {
    pub fn new(n: usize, k: usize, mut members: Vec<u64>) -> Result<Self> {
        for &m in &members {
            if m.count_ones() as usize != k + 1 {
                return Err(TdaError::Structural(format!(
                    "clique {m:#b} has Hamming weight {} but expected {}",
                    m.count_ones(),
                    k + 1
                )));
            }
            if n < MAX_VERTICES && m >> n != 0 {
                return Err(TdaError::Structural(format!("clique {m:#b} uses vertices >= {n}")));
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { n, k, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Enumerate all (k+1)-cliques for k = 0..=k_max, level-wise.
///
/// The result is downward-closed across orders: every k-subset of a stored
/// clique appears in the order-(k-1) set.
pub fn enumerate_cliques(g: &SkeletonGraph, k_max: usize) -> Result<Vec<CliqueSet>> {
    let n = g.n();
    if k_max + 1 > n {
        return Err(TdaError::InvalidInput(format!(
            "k_max + 1 = {} exceeds vertex count {n}",
            k_max + 1
        )));
    }
    let mut out = Vec::with_capacity(k_max + 1);
    let vertices: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    out.push(CliqueSet { n, k: 0, members: vertices });
    for k in 1..=k_max {
        let prev = &out[k - 1];
        let mut members = Vec::new();
        for &m in &prev.members {
            // candidates adjacent to every member, above the highest vertex
            let high = 63 - m.leading_zeros() as usize;
            let mut cand = !0u64;
            let mut bits = m;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                cand &= g.neighbors(v);
            }
            cand &= !((1u64 << high) | (1u64.wrapping_shl(high as u32) - 1));
            while cand != 0 {
                let u = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                members.push(m | (1 << u));
            }
        }
        members.sort_unstable();
        out.push(CliqueSet { n, k, members });
    }
    Ok(out)
}

/// Clique density `zeta_k = |Cl_k(G)| / C(n, k+1)`.
pub fn clique_density(g: &SkeletonGraph, k: usize) -> Result<f64> {
    let n = g.n();
    if k + 1 > n {
        return Err(TdaError::InvalidInput(format!("k + 1 = {} exceeds vertex count {n}", k + 1)));
    }
    let cliques = enumerate_cliques(g, k)?;
    Ok(cliques[k].len() as f64 / binomial(n, k + 1))
}

fn binomial(n: usize, r: usize) -> f64 {
    let r = r.min(n - r);
    let mut acc = 1.0;
    for i in 0..r {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}
