//! Five-point Dirichlet Laplacian on a planar raster and its envelope
//! Cholesky factor.
//!
//! Unknowns are the inside cells. A face shared with an outside cell carries
//! the boundary condition at the face itself (ghost value `-u`), so a cell
//! with `b` outside neighbours has diagonal `(4 + b) / h^2`. On a `w x l`
//! rectangle the eigenvectors are the continuum modes sampled at the cell
//! centres, with eigenvalues
//! `(4/h^2)(sin^2(p pi h / (2w)) + sin^2(q pi h / (2l)))`.

use crate::geometry::RasterDomain;
use crate::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct DirichletLaplacian {
    h: f64,
    /// Raster index of each unknown.
    cells: Vec<usize>,
    diag: Vec<f64>,
    neighbors: Vec<[u32; 4]>,
}

impl DirichletLaplacian {
    pub fn new(domain: &RasterDomain) -> Result<Self> {
        if domain.dim() != 2 {
            return Err(Error::UnsupportedDimension { m: domain.dim(), supported: "2 (spectra are planar only)" });
        }
        let shape = domain.shape();
        let strides = domain.strides();
        // the shorter axis runs fastest, which keeps the envelope narrow
        let (slow, fast) = if shape[0] >= shape[1] { (0, 1) } else { (1, 0) };
        let mut cells = Vec::with_capacity(domain.inside_count());
        for a in 0..shape[slow] {
            for b in 0..shape[fast] {
                let idx = a * strides[slow] + b * strides[fast];
                if domain.is_inside(idx) {
                    cells.push(idx);
                }
            }
        }
        let mut unknown = vec![NONE; domain.len()];
        for (u, &c) in cells.iter().enumerate() {
            unknown[c] = u as u32;
        }
        let inv_h2 = 1.0 / (domain.h() * domain.h());
        let mut diag = Vec::with_capacity(cells.len());
        let mut neighbors = Vec::with_capacity(cells.len());
        for &c in &cells {
            let mut nb = [NONE; 4];
            let mut outside = 0;
            for (slot, j) in domain.face_neighbors(c).enumerate() {
                nb[slot] = unknown[j];
                if unknown[j] == NONE {
                    outside += 1;
                }
            }
            diag.push((4 + outside) as f64 * inv_h2);
            neighbors.push(nb);
        }
        Ok(Self { h: domain.h(), cells, diag, neighbors })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let inv_h2 = 1.0 / (self.h * self.h);
        for (i, yi) in y.iter_mut().enumerate() {
            let off: f64 = self.neighbors[i].iter().filter(|&&j| j != NONE).map(|&j| x[j as usize]).sum();
            *yi = self.diag[i] * x[i] - inv_h2 * off;
        }
    }

    pub fn factor(&self) -> Result<EnvelopeCholesky> {
        EnvelopeCholesky::new(self)
    }
}

/// `A = L L^T` with `L` stored row by row from the first nonzero column.
#[derive(Debug, Clone)]
pub struct EnvelopeCholesky {
    first: Vec<usize>,
    offsets: Vec<usize>,
    values: Vec<f64>,
}

impl EnvelopeCholesky {
    /// Largest envelope accepted, in stored entries.
    pub const MAX_ENTRIES: usize = 60_000_000;

    fn new(a: &DirichletLaplacian) -> Result<Self> {
        let n = a.len();
        let first: Vec<usize> = (0..n)
            .map(|i| a.neighbors[i].iter().filter(|&&j| j != NONE).map(|&j| j as usize).fold(i, usize::min))
            .collect();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for i in 0..n {
            offsets.push(offsets[i] + i - first[i] + 1);
        }
        let total = offsets[n];
        if total > Self::MAX_ENTRIES {
            return Err(Error::Scale(format!("Cholesky envelope of {total} entries")));
        }
        let mut values = vec![0.0; total];
        let inv_h2 = 1.0 / (a.h * a.h);
        for i in 0..n {
            let (done, rest) = values.split_at_mut(offsets[i]);
            let row = &mut rest[..i - first[i] + 1];
            for &j in a.neighbors[i].iter().filter(|&&j| j != NONE && (j as usize) < i) {
                row[j as usize - first[i]] = -inv_h2;
            }
            for j in first[i]..i {
                let start = first[i].max(first[j]);
                let rj = &done[offsets[j]..offsets[j + 1]];
                let dot: f64 = (start..j).map(|k| row[k - first[i]] * rj[k - first[j]]).sum();
                row[j - first[i]] = (row[j - first[i]] - dot) / rj[j - first[j]];
            }
            let d = a.diag[i] - row[..i - first[i]].iter().map(|v| v * v).sum::<f64>();
            if !(d > 0.0) {
                return Err(Error::NumericFailure {
                    what: "cholesky",
                    detail: format!("non-positive pivot {d} at row {i}"),
                });
            }
            row[i - first[i]] = d.sqrt();
        }
        Ok(Self { first, offsets, values })
    }

    pub fn entries(&self) -> usize {
        self.values.len()
    }

    /// Solves `A x = b` in place.
    pub fn solve(&self, x: &mut [f64]) {
        let n = self.first.len();
        for i in 0..n {
            let row = &self.values[self.offsets[i]..self.offsets[i + 1]];
            let f = self.first[i];
            let dot: f64 = row[..i - f].iter().zip(&x[f..i]).map(|(l, v)| l * v).sum();
            x[i] = (x[i] - dot) / row[i - f];
        }
        for i in (0..n).rev() {
            let row = &self.values[self.offsets[i]..self.offsets[i + 1]];
            let f = self.first[i];
            x[i] /= row[i - f];
            let xi = x[i];
            for (v, l) in x[f..i].iter_mut().zip(&row[..i - f]) {
                *v -= l * xi;
            }
        }
    }
}
