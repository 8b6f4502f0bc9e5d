//! Exact distance from cell centers to the face boundary of a raster.
//!
//! The boundary is the union of faces between inside and outside cells, so
//! `d(x, boundary)` for an inside center `x` is the distance to the nearest
//! closed outside cell. Measured in half-cell units that distance squared is
//! `sum_k g(dk)` with `g(0) = 0` and `g(t) = (2|t| - 1)^2` over the integer
//! offsets `dk` to an outside cell, which separates into one min-plus pass
//! per axis. `g` is convex on the integers, so each pass is a lower envelope
//! of translated copies of `g`.

use super::raster::RasterDomain;
use super::BoundaryLayer;

const FAR: i64 = i64::MAX / 4;

#[inline]
fn kernel(t: i64) -> i64 {
    if t == 0 {
        0
    } else {
        let a = 2 * t.abs() - 1;
        a * a
    }
}

/// One min-plus pass: `out[x] = min_q kernel(x - q) + f[q]`.
fn envelope_pass(f: &[i64], out: &mut [i64], sites: &mut Vec<usize>, starts: &mut Vec<usize>) {
    let n = f.len();
    sites.clear();
    starts.clear();
    let cost = |q: usize, x: usize| kernel(x as i64 - q as i64) + f[q];
    for q in (0..n).filter(|&q| f[q] < FAR) {
        loop {
            let Some(&top) = sites.last() else {
                sites.push(q);
                starts.push(0);
                break;
            };
            let from = *starts.last().unwrap();
            // first x >= from where q is at least as cheap as top; the cost
            // difference is monotone in x because the kernel is convex
            let (mut lo, mut hi) = (from, n);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if cost(q, mid) <= cost(top, mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            if lo <= from {
                sites.pop();
                starts.pop();
                continue;
            }
            if lo < n {
                sites.push(q);
                starts.push(lo);
            }
            break;
        }
    }
    if sites.is_empty() {
        out.fill(FAR);
        return;
    }
    let mut k = 0;
    for (x, o) in out.iter_mut().enumerate() {
        while k + 1 < sites.len() && starts[k + 1] <= x {
            k += 1;
        }
        *o = cost(sites[k], x);
    }
}

/// Per-cell boundary distances of a raster, with the boundary-layer
/// measure `mu` attached.
#[derive(Debug, Clone)]
pub struct DistanceField {
    dim: usize,
    h: f64,
    shape: Vec<usize>,
    /// Distance per cell; zero on outside cells.
    dist: Vec<f64>,
    sorted: Vec<f64>,
    prefix: Vec<f64>,
    measure: f64,
    extent: f64,
}

impl DistanceField {
    pub fn compute(domain: &RasterDomain) -> Self {
        let shape = domain.shape().to_vec();
        let strides = domain.strides();
        let mask = domain.mask();
        let len = mask.len();
        let mut field: Vec<i64> = mask.iter().map(|&inside| if inside { FAR } else { 0 }).collect();

        let mut line = Vec::new();
        let mut out = Vec::new();
        let (mut sites, mut starts) = (Vec::new(), Vec::new());
        for axis in 0..shape.len() {
            let n = shape[axis];
            let stride = strides[axis];
            line.resize(n, 0);
            out.resize(n, 0);
            // line starts: every index whose coordinate along `axis` is zero
            for base in (0..len).filter(|&i| (i / stride).is_multiple_of(n)) {
                for (t, v) in line.iter_mut().enumerate() {
                    *v = field[base + t * stride];
                }
                envelope_pass(&line, &mut out, &mut sites, &mut starts);
                for (t, &v) in out.iter().enumerate() {
                    field[base + t * stride] = v;
                }
            }
        }

        let h = domain.h();
        let dist: Vec<f64> = field
            .iter()
            .zip(mask)
            .map(|(&d2, &inside)| if inside { 0.5 * h * (d2 as f64).sqrt() } else { 0.0 })
            .collect();
        let mut sorted: Vec<f64> =
            dist.iter().zip(mask).filter(|(_, &inside)| inside).map(|(&d, _)| d).collect();
        sorted.sort_by(f64::total_cmp);
        let mut prefix = Vec::with_capacity(sorted.len() + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for &d in &sorted {
            acc += d;
            prefix.push(acc);
        }
        Self {
            dim: domain.dim(),
            h,
            shape,
            dist,
            sorted,
            prefix,
            measure: domain.measure(),
            extent: domain.bounding_diagonal(),
        }
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Distances for every cell (outside cells hold zero).
    pub fn values(&self) -> &[f64] {
        &self.dist
    }

    /// Inside-cell distances in ascending order.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Largest cell-center distance, a lower estimate of the inradius.
    pub fn max_distance(&self) -> f64 {
        self.sorted.last().copied().unwrap_or(0.0)
    }
}

impl BoundaryLayer for DistanceField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn measure(&self) -> f64 {
        self.measure
    }

    /// Each inside cell contributes the fraction of its width lying within
    /// `eps` of the boundary, assuming the distance varies linearly across
    /// the cell: `clamp((eps - d)/h + 1/2, 0, 1)`.
    fn layer_measure(&self, eps: f64) -> f64 {
        let h = self.h;
        let full = self.sorted.partition_point(|&d| d <= eps - 0.5 * h);
        let partial_end = self.sorted.partition_point(|&d| d < eps + 0.5 * h);
        let count = (partial_end - full) as f64;
        let partial =
            count * (eps / h + 0.5) - (self.prefix[partial_end] - self.prefix[full]) / h;
        let cells = full as f64 + partial.max(0.0);
        (cells * h.powi(self.dim as i32)).min(self.measure)
    }

    fn extent(&self) -> f64 {
        self.extent
    }

    fn resolution(&self) -> Option<f64> {
        Some(self.h)
    }
}
