//! Discrete Dirichlet spectra of planar rasters, nodal domains and Courant
//! scans.

mod eigensolver;
mod laplacian;
mod nodal;
mod scan;

pub use eigensolver::SolverOptions;
pub use laplacian::{DirichletLaplacian, EnvelopeCholesky};
pub use nodal::{label_sign_components, nodal_domains, NodalDecomposition, ZERO_FRACTION};
pub use scan::{courant_sharp_scan, pleijel_ratio, BoundCheck, CourantScan, PleijelRatios, ScanOptions, ScanRecord};

use serde::Serialize;

use crate::geometry::RasterDomain;
use crate::{Error, Result};

pub const MAX_EIGENPAIRS: usize = 200;
/// Eigenvalues closer than this (relative) share a cluster.
pub const CLUSTER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumResult {
    #[serde(skip)]
    pub domain: RasterDomain,
    pub h: f64,
    pub seed: u64,
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Clusters are numbered from 0 in ascending order.
    pub cluster_ids: Vec<usize>,
    /// One grid function per eigenvalue over the whole raster, zero outside.
    #[serde(skip)]
    pub eigenvectors: Vec<Vec<f64>>,
}

impl SpectrumResult {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// 1-based index of the first eigenvalue in the cluster of `n`.
    pub fn cluster_start(&self, n: usize) -> usize {
        let id = self.cluster_ids[n - 1];
        self.cluster_ids.iter().position(|&c| c == id).unwrap() + 1
    }

    /// 1-based indices of the cluster containing `n`.
    pub fn cluster_members(&self, n: usize) -> Vec<usize> {
        let id = self.cluster_ids[n - 1];
        (1..=self.len()).filter(|&i| self.cluster_ids[i - 1] == id).collect()
    }

    /// Distinct eigenvalues, one per cluster (the cluster mean).
    pub fn distinct_values(&self) -> Vec<f64> {
        let clusters = self.cluster_ids.last().map_or(0, |&c| c + 1);
        (0..clusters)
            .map(|c| {
                let members: Vec<f64> =
                    self.eigenvalues.iter().zip(&self.cluster_ids).filter(|(_, &id)| id == c).map(|(&v, _)| v).collect();
                members.iter().sum::<f64>() / members.len() as f64
            })
            .collect()
    }
}

pub fn cluster_ids(values: &[f64], tol: f64) -> Vec<usize> {
    let mut ids = Vec::with_capacity(values.len());
    let mut current = 0;
    for (i, &v) in values.iter().enumerate() {
        if i > 0 && v - values[i - 1] > tol * v.abs() {
            current += 1;
        }
        ids.push(current);
    }
    ids
}

/// The `k` lowest eigenpairs of the five-point Dirichlet Laplacian.
pub fn solve_dirichlet_spectrum(domain: &RasterDomain, k: usize, opts: &SolverOptions) -> Result<SpectrumResult> {
    if k == 0 {
        return Err(Error::invalid("k", "need at least one eigenpair"));
    }
    if k > MAX_EIGENPAIRS {
        return Err(Error::Scale(format!("k = {k} exceeds {MAX_EIGENPAIRS}")));
    }
    if domain.inside_count() < 10 * k {
        return Err(Error::Scale(format!(
            "{} inside cells are too few for k = {k} (need {})",
            domain.inside_count(),
            10 * k
        )));
    }
    let op = DirichletLaplacian::new(domain)?;
    let chol = op.factor()?;
    let pairs = eigensolver::lowest_eigenpairs(&op, &chol, k, opts)?;
    if let Some((i, r)) = pairs.residuals.iter().enumerate().find(|(_, &r)| !(r <= opts.tol)) {
        return Err(Error::NumericFailure {
            what: "eigensolver",
            detail: format!("residual {r:.3e} for eigenpair {} exceeds {:.1e}", i + 1, opts.tol),
        });
    }
    let eigenvectors = pairs
        .vectors
        .iter()
        .map(|v| {
            // deterministic sign: the largest entry is positive
            let (imax, _) = v.iter().enumerate().fold((0, 0.0), |acc, (i, &x)| if x.abs() > acc.1 { (i, x.abs()) } else { acc });
            let sign = if v[imax] < 0.0 { -1.0 } else { 1.0 };
            let mut grid = vec![0.0; domain.len()];
            for (&cell, &x) in op.cells().iter().zip(v) {
                grid[cell] = sign * x;
            }
            grid
        })
        .collect();
    Ok(SpectrumResult {
        domain: domain.clone(),
        h: domain.h(),
        seed: opts.seed,
        cluster_ids: cluster_ids(&pairs.values, CLUSTER_TOL),
        eigenvalues: pairs.values,
        residuals: pairs.residuals,
        eigenvectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn square(n: usize) -> RasterDomain {
        let h = 1.0 / n as f64;
        RasterDomain::from_predicate(h, vec![-h, -h], vec![n + 2, n + 2], |p| p.iter().all(|&x| x > 0.0 && x < 1.0))
            .unwrap()
    }

    #[test]
    fn small_square_matches_discrete_oracle() {
        let n = 24;
        let h = 1.0 / n as f64;
        let spec = solve_dirichlet_spectrum(&square(n), 12, &SolverOptions::default()).unwrap();
        let s = |p: usize| (p as f64 * PI * h / 2.0).sin().powi(2);
        let mut oracle: Vec<f64> =
            (1..n).flat_map(|p| (1..n).map(move |q| (p, q))).map(|(p, q)| 4.0 / (h * h) * (s(p) + s(q))).collect();
        oracle.sort_by(f64::total_cmp);
        for (a, b) in spec.eigenvalues.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-9 * b, "{a} vs {b}");
        }
        assert!(spec.residuals.iter().all(|&r| r <= 1e-8));
        assert_eq!(&spec.cluster_ids[..4], &[0, 1, 1, 2]);
        assert_eq!(spec.cluster_start(3), 2);
        assert_eq!(spec.cluster_members(2), vec![2, 3]);
        let a = &spec.eigenvectors[1];
        let b = &spec.eigenvectors[2];
        let c = dot_all(a, b) / (dot_all(a, a) * dot_all(b, b)).sqrt();
        assert!(c.abs() < 1e-8);
    }

    fn dot_all(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn deterministic_for_a_seed() {
        let d = square(16);
        let opts = SolverOptions { seed: 7, ..Default::default() };
        let a = solve_dirichlet_spectrum(&d, 6, &opts).unwrap();
        let b = solve_dirichlet_spectrum(&d, 6, &opts).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(a.eigenvectors, b.eigenvectors);
    }

    #[test]
    fn argument_checks() {
        let d = square(8);
        assert!(solve_dirichlet_spectrum(&d, 0, &SolverOptions::default()).is_err());
        assert!(matches!(solve_dirichlet_spectrum(&d, 7, &SolverOptions::default()), Err(Error::Scale(_))));
        assert!(matches!(solve_dirichlet_spectrum(&d, 201, &SolverOptions::default()), Err(Error::Scale(_))));
    }

    #[test]
    fn clusters_split_on_relative_gaps() {
        assert_eq!(cluster_ids(&[1.0, 1.0 + 1e-9, 2.0, 2.1], 1e-6), vec![0, 0, 1, 2]);
    }
}
