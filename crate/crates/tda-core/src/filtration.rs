//! Vietoris-Rips filtrations and Betti numbers along a threshold grid.

use crate::boundary::boundary_column;
use crate::cloud::DistanceMatrix;
use crate::complex::{build_complex, SimplicialComplex};
use crate::error::{Result, TdaError};
use crate::graph::{enumerate_cliques, vr_skeleton};
use crate::rank::{RankBackend, RankEngine};
use crate::thresholds::ThresholdSequence;

/// A nested sequence of simplicial complexes, one per threshold.
#[derive(Debug, Clone)]
pub struct Filtration {
    thresholds: ThresholdSequence,
    complexes: Vec<SimplicialComplex>,
}

impl Filtration {
    pub fn new(thresholds: ThresholdSequence, complexes: Vec<SimplicialComplex>) -> Result<Self> {
        if thresholds.len() != complexes.len() {
            return Err(TdaError::InvalidInput(format!(
                "{} thresholds but {} complexes",
                thresholds.len(),
                complexes.len()
            )));
        }
        let n = complexes[0].n();
        if complexes.iter().any(|c| c.n() != n) {
            return Err(TdaError::Structural("complexes disagree on vertex set".into()));
        }
        Ok(Self { thresholds, complexes })
    }

    pub fn thresholds(&self) -> &ThresholdSequence {
        &self.thresholds
    }

    pub fn complexes(&self) -> &[SimplicialComplex] {
        &self.complexes
    }

    pub fn len(&self) -> usize {
        self.complexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complexes.is_empty()
    }

    /// Verify simplex-set inclusion for each consecutive pair.
    pub fn is_nested(&self) -> bool {
        self.complexes.windows(2).all(|w| w[0].is_subcomplex_of(&w[1]))
    }
}

/// Build the Vietoris-Rips filtration of a distance matrix over a threshold
/// grid. Clique enumeration runs to simplex dimension k_max+1 so that Betti
/// numbers up to order k_max are not truncated.
pub fn vr_filtration(
    dm: &DistanceMatrix,
    thresholds: &ThresholdSequence,
    k_max: usize,
) -> Result<Filtration> {
    let cap = (k_max + 1).min(dm.n().saturating_sub(1));
    let complexes = thresholds
        .values()
        .iter()
        .map(|&eps| {
            let g = vr_skeleton(dm, eps)?;
            build_complex(&enumerate_cliques(&g, cap)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Filtration::new(thresholds.clone(), complexes)
}

fn simplex_diameter(simplex: &[usize], dm: &DistanceMatrix) -> f64 {
    let mut d = 0.0;
    for (i, &a) in simplex.iter().enumerate() {
        for &b in &simplex[i + 1..] {
            d = f64::max(d, dm.get(a, b));
        }
    }
    d
}

/// Betti numbers beta_k(S_j) for all orders k <= k_max and all thresholds,
/// computed in one pass per dimension by incremental column reduction.
///
/// Equivalent to running `betti_exact` on every complex of
/// `vr_filtration(dm, thresholds, k_max)`, but each boundary column is
/// reduced exactly once across the whole filtration.
pub fn filtration_betti_curves(
    dm: &DistanceMatrix,
    thresholds: &ThresholdSequence,
    k_max: usize,
    backend: RankBackend,
) -> Result<Vec<Vec<usize>>> {
    let q1 = thresholds.len();
    let last = *thresholds.values().last().unwrap();
    let final_graph = vr_skeleton(dm, last)?;
    let cap = (k_max + 1).min(dm.n().saturating_sub(1));
    let final_complex = build_complex(&enumerate_cliques(&final_graph, cap)?)?;

    // appearance index per simplex, all dimensions up to cap
    let mut appearance: Vec<Vec<usize>> = Vec::with_capacity(cap + 1);
    for p in 0..=cap.min(final_complex.max_dim()) {
        let app = final_complex
            .simplices(p)
            .iter()
            .map(|s| {
                thresholds
                    .appearance_index(simplex_diameter(s, dm))
                    .expect("simplex diameter within final threshold")
            })
            .collect();
        appearance.push(app);
    }

    // prefix simplex counts per dimension and threshold
    let max_dim = final_complex.max_dim();
    let mut counts: Vec<Vec<usize>> = vec![vec![0; q1]; max_dim + 1];
    for (p, app) in appearance.iter().enumerate() {
        for &j in app {
            counts[p][j] += 1;
        }
        for j in 1..q1 {
            counts[p][j] += counts[p][j - 1];
        }
    }

    // rank of d_p restricted to columns appearing by each threshold
    let mut ranks: Vec<Vec<usize>> = vec![vec![0; q1]; max_dim + 2];
    for p in 1..=max_dim {
        let faces = final_complex.simplices(p - 1);
        let simplices = final_complex.simplices(p);
        let mut order: Vec<usize> = (0..simplices.len()).collect();
        order.sort_by_key(|&i| (appearance[p][i], i));
        let mut engine = RankEngine::new(backend, faces.len());
        let mut stage = 0usize;
        for &i in &order {
            let j = appearance[p][i];
            while stage < j {
                ranks[p][stage + 1] = ranks[p][stage];
                stage += 1;
            }
            let col = boundary_column(&simplices[i], faces)?;
            engine.push_column(&col);
            ranks[p][stage] = engine.rank();
        }
        while stage + 1 < q1 {
            ranks[p][stage + 1] = ranks[p][stage];
            stage += 1;
        }
    }

    let mut curves = vec![vec![0usize; q1]; k_max + 1];
    for k in 0..=k_max {
        for j in 0..q1 {
            let ck = if k <= max_dim { counts[k][j] } else { 0 };
            let rk = if k >= 1 && k <= max_dim { ranks[k][j] } else { 0 };
            let rk1 = if k + 1 <= max_dim { ranks[k + 1][j] } else { 0 };
            curves[k][j] = ck - rk - rk1;
        }
    }
    Ok(curves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloud::{distance_matrix, PointCloud};

    fn square_dm() -> DistanceMatrix {
        let c = PointCloud::new(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        distance_matrix(&c)
    }

    #[test]
    fn square_filtration_stages() {
        let ts = ThresholdSequence::new(vec![0.0, 1.2, 1.5]).unwrap();
        let f = vr_filtration(&square_dm(), &ts, 2).unwrap();
        assert_eq!(f.len(), 3);
        // isolated points
        assert_eq!(f.complexes()[0].count(0), 4);
        assert_eq!(f.complexes()[0].count(1), 0);
        // 4-cycle
        assert_eq!(f.complexes()[1].count(1), 4);
        assert_eq!(f.complexes()[1].count(2), 0);
        // full skeleton of the 4-simplex... K_4 with all faces to dim 3
        assert_eq!(f.complexes()[2].count(1), 6);
        assert_eq!(f.complexes()[2].count(2), 4);
        assert_eq!(f.complexes()[2].count(3), 1);
        assert!(f.is_nested());
    }

    #[test]
    fn single_threshold_vertices_only() {
        let ts = ThresholdSequence::new(vec![0.0]).unwrap();
        let f = vr_filtration(&square_dm(), &ts, 1).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.complexes()[0].max_dim(), 0);
    }

    #[test]
    fn curves_match_per_complex_computation() {
        use crate::homology::betti_exact;
        let ts = ThresholdSequence::new(vec![0.0, 1.0, 1.2, 1.5]).unwrap();
        let dm = square_dm();
        let k_max = 2;
        let fast = filtration_betti_curves(&dm, &ts, k_max, RankBackend::Rational).unwrap();
        let f = vr_filtration(&dm, &ts, k_max).unwrap();
        for (j, s) in f.complexes().iter().enumerate() {
            for k in 0..=k_max {
                let b = betti_exact(s, k, RankBackend::Rational).unwrap();
                assert_eq!(fast[k][j], b.value, "k={k} j={j}");
            }
        }
    }

    #[test]
    fn square_curve_values() {
        let ts = ThresholdSequence::new(vec![0.0, 1.2, 1.5]).unwrap();
        let curves = filtration_betti_curves(&square_dm(), &ts, 1, RankBackend::Rational).unwrap();
        assert_eq!(curves[0], vec![4, 1, 1]);
        assert_eq!(curves[1], vec![0, 1, 0]);
    }
}
