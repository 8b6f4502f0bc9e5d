//! Lowest eigenpairs of the discrete Laplacian by block Krylov iteration
//! with the inverse operator, full reorthogonalisation and Rayleigh-Ritz
//! projection onto the Laplacian itself.
//!
//! After each projection the unconverged Ritz vectors seed the next block,
//! which makes repeated eigenvalues (up to the block size per sweep) and
//! tight clusters converge without special handling.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::laplacian::{DirichletLaplacian, EnvelopeCholesky};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub seed: u64,
    /// Required `||A v - lambda v|| / (lambda ||v||)`.
    pub tol: f64,
    pub block: usize,
    pub max_restarts: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { seed: 0, tol: 1e-8, block: 4, max_restarts: 60 }
    }
}

pub(crate) struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Orthogonalises `w` against `basis` twice; returns the surviving fraction
/// of its norm.
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) -> f64 {
    let before = norm(w);
    for _ in 0..2 {
        for v in basis {
            let c = dot(v, w);
            axpy(-c, v, w);
        }
    }
    let after = norm(w);
    if before > 0.0 {
        after / before
    } else {
        0.0
    }
}

fn combine(basis: &[Vec<f64>], coeffs: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out = vec![0.0; basis[0].len()];
    for (v, c) in basis.iter().zip(coeffs) {
        if c != 0.0 {
            axpy(c, v, &mut out);
        }
    }
    out
}

struct Subspace<'a> {
    op: &'a DirichletLaplacian,
    basis: Vec<Vec<f64>>,
    images: Vec<Vec<f64>>,
}

impl Subspace<'_> {
    fn push(&mut self, mut w: Vec<f64>) -> bool {
        let kept = orthogonalize(&self.basis, &mut w);
        if kept < 1e-10 {
            return false;
        }
        let n = norm(&w);
        w.iter_mut().for_each(|x| *x /= n);
        let mut aw = vec![0.0; w.len()];
        self.op.apply(&w, &mut aw);
        self.basis.push(w);
        self.images.push(aw);
        true
    }
}

pub(crate) fn lowest_eigenpairs(
    op: &DirichletLaplacian,
    chol: &EnvelopeCholesky,
    k: usize,
    opts: &SolverOptions,
) -> Result<Eigenpairs> {
    let n = op.len();
    let block = opts.block.max(1);
    let nev = (k + (k / 5).max(block)).min(n);
    let max_basis = (2 * nev + 4 * block).max(nev + 40).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut space = Subspace { op, basis: Vec::new(), images: Vec::new() };
    let mut seeds: Vec<Vec<f64>> =
        (0..block).map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
    let mut worst = f64::INFINITY;

    for _ in 0..=opts.max_restarts {
        // Krylov expansion with A^-1
        while space.basis.len() < max_basis && !seeds.is_empty() {
            let mut next = Vec::with_capacity(seeds.len());
            for mut w in seeds.drain(..) {
                chol.solve(&mut w);
                let before = space.basis.len();
                if space.push(w) {
                    next.push(space.basis[before].clone());
                }
                if space.basis.len() >= max_basis {
                    break;
                }
            }
            seeds = next;
        }

        // Rayleigh-Ritz with A
        let s = space.basis.len();
        let g = DMatrix::from_fn(s, s, |i, j| {
            0.5 * (dot(&space.basis[i], &space.images[j]) + dot(&space.basis[j], &space.images[i]))
        });
        let eig = SymmetricEigen::new(g);
        let mut order: Vec<usize> = (0..s).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let take = nev.min(s);
        let mut values = Vec::with_capacity(take);
        let mut vectors = Vec::with_capacity(take);
        let mut images = Vec::with_capacity(take);
        let mut residuals = Vec::with_capacity(take);
        for &c in &order[..take] {
            let theta = eig.eigenvalues[c];
            let z = eig.eigenvectors.column(c);
            let y = combine(&space.basis, z.iter().copied());
            let ay = combine(&space.images, z.iter().copied());
            let mut r = ay.clone();
            axpy(-theta, &y, &mut r);
            residuals.push(norm(&r) / (theta.abs() * norm(&y)));
            values.push(theta);
            vectors.push(y);
            images.push(ay);
        }
        worst = residuals[..k.min(take)].iter().copied().fold(0.0, f64::max);
        if take >= k && worst <= 0.25 * opts.tol {
            vectors.truncate(k);
            values.truncate(k);
            // residuals recomputed against the operator itself
            let residuals = vectors
                .iter()
                .zip(&values)
                .map(|(v, &lambda)| {
                    let mut av = vec![0.0; n];
                    op.apply(v, &mut av);
                    axpy(-lambda, v, &mut av);
                    norm(&av) / (lambda * norm(v))
                })
                .collect();
            return Ok(Eigenpairs { values, vectors, residuals });
        }

        // restart from the Ritz vectors; unconverged ones seed the next sweep
        seeds = vectors
            .iter()
            .zip(&residuals)
            .filter(|(_, &r)| r > 0.25 * opts.tol)
            .map(|(v, _)| v.clone())
            .collect();
        space.basis = vectors;
        space.images = images;
        if seeds.is_empty() || space.basis.len() >= n {
            if space.basis.len() >= n {
                continue;
            }
            return Err(Error::NumericFailure {
                what: "eigensolver",
                detail: format!("Krylov space exhausted with residual {worst:.3e}"),
            });
        }
    }
    Err(Error::NumericFailure {
        what: "eigensolver",
        detail: format!("no convergence after {} restarts; worst residual {worst:.3e}", opts.max_restarts),
    })
}
