//! Point clouds, Vietoris-Rips filtrations, clique enumeration, boundary
//! matrices and exact Betti numbers.
//!
//! The pipeline in this crate: a [`PointCloud`] yields a [`DistanceMatrix`];
//! thresholding the distances gives a [`SkeletonGraph`] whose cliques form a
//! [`SimplicialComplex`]; boundary-matrix ranks give exact Betti numbers,
//! either per complex ([`betti_exact`]) or along a whole filtration in one
//! incremental pass ([`filtration_betti_curves`]).

mod boundary;
mod cloud;
mod complex;
mod error;
mod filtration;
mod graph;
mod homology;
mod rank;
mod thresholds;

pub use boundary::{boundary_matrix, BoundaryMatrix};
pub use cloud::{distance_matrix, DistanceMatrix, PointCloud};
pub use complex::{build_complex, euler_characteristic, SimplicialComplex};
pub use error::{Result, TdaError};
pub use filtration::{filtration_betti_curves, vr_filtration, Filtration};
pub use graph::{
    clique_density, enumerate_cliques, vr_skeleton, CliqueSet, SkeletonGraph, MAX_VERTICES,
};
pub use homology::{betti_exact, betti_numbers, BettiNumber};
pub use rank::{matrix_rank, Gf2Rank, RankBackend, RankEngine, RationalRank};
pub use thresholds::{threshold_sequence, ThresholdSequence};
