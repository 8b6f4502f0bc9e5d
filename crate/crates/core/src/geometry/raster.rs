use crate::{Error, Result};

/// An open set in `R^2` or `R^3` stored as an occupancy grid.
///
/// Cell `i` (multi-index, last axis fastest) has center
/// `origin + (i + 1/2) h`; the represented set is the interior of the union of
/// the closed cells marked true. Cells on the array border are always false.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterDomain {
    h: f64,
    origin: Vec<f64>,
    shape: Vec<usize>,
    mask: Vec<bool>,
    inside: usize,
}

/// A subset of `R^m` that can be sampled onto a raster.
pub trait Region {
    fn dim(&self) -> usize;
    /// Axis-aligned bounds `(lower, upper)`.
    fn bounding_box(&self) -> (Vec<f64>, Vec<f64>);
    /// Strict (open-set) membership.
    fn contains(&self, point: &[f64]) -> bool;
}

impl RasterDomain {
    pub fn new(h: f64, origin: Vec<f64>, shape: Vec<usize>, mask: Vec<bool>) -> Result<Self> {
        let m = shape.len();
        if m != 2 && m != 3 {
            return Err(Error::UnsupportedDimension { m, supported: "2 or 3 for rasters" });
        }
        if origin.len() != m {
            return Err(Error::InvalidDomain(format!(
                "origin has {} coordinates, expected {m}",
                origin.len()
            )));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidDomain(format!("grid spacing must be positive, got {h}")));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::InvalidDomain("origin must be finite".into()));
        }
        let len: usize = shape.iter().product();
        if len != mask.len() {
            return Err(Error::InvalidDomain(format!(
                "mask has {} cells but shape {:?} needs {len}",
                mask.len(),
                shape
            )));
        }
        let inside = mask.iter().filter(|&&b| b).count();
        if inside == 0 {
            return Err(Error::InvalidDomain("mask has no inside cells".into()));
        }
        let domain = Self { h, origin, shape, mask, inside };
        if let Some(idx) = (0..len).find(|&i| domain.mask[i] && domain.on_border(i)) {
            return Err(Error::InvalidDomain(format!(
                "inside cell {:?} touches the array border",
                domain.coords(idx)
            )));
        }
        Ok(domain)
    }

    /// Samples `inside` at every cell center.
    pub fn from_predicate(
        h: f64,
        origin: Vec<f64>,
        shape: Vec<usize>,
        inside: impl Fn(&[f64]) -> bool,
    ) -> Result<Self> {
        let len: usize = shape.iter().product();
        let mut mask = vec![false; len];
        let mut center = vec![0.0; shape.len()];
        let strides = strides_of(&shape);
        for (idx, cell) in mask.iter_mut().enumerate() {
            for (k, c) in center.iter_mut().enumerate() {
                let i = (idx / strides[k]) % shape[k];
                *c = origin[k] + (i as f64 + 0.5) * h;
            }
            *cell = inside(&center);
        }
        Self::new(h, origin, shape, mask)
    }

    /// Raster of `region` on the lattice `h Z^m`, with one empty cell of
    /// padding on every side.
    pub fn rasterize(region: &impl Region, h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::invalid("h", format!("must be positive, got {h}")));
        }
        let (lo, hi) = region.bounding_box();
        let mut origin = Vec::with_capacity(lo.len());
        let mut shape = Vec::with_capacity(lo.len());
        for (&a, &b) in lo.iter().zip(&hi) {
            let first = snap_floor(a / h) - 1;
            let last = snap_ceil(b / h) + 1;
            let n = (last - first) as usize;
            if n > 1 << 16 {
                return Err(Error::Scale(format!("{n} cells along one axis at h = {h}")));
            }
            origin.push(first as f64 * h);
            shape.push(n);
        }
        let cells: usize = shape.iter().product();
        if cells > 200_000_000 {
            return Err(Error::Scale(format!("{cells} raster cells at h = {h}")));
        }
        Self::from_predicate(h, origin, shape, |p| region.contains(p))
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inside == 0
    }

    pub fn inside_count(&self) -> usize {
        self.inside
    }

    pub fn is_inside(&self, idx: usize) -> bool {
        self.mask[idx]
    }

    /// Lebesgue measure `(inside cells) h^m`.
    pub fn measure(&self) -> f64 {
        self.inside as f64 * self.h.powi(self.dim() as i32)
    }

    pub fn strides(&self) -> Vec<usize> {
        strides_of(&self.shape)
    }

    pub fn coords(&self, idx: usize) -> Vec<usize> {
        let strides = self.strides();
        (0..self.dim()).map(|k| (idx / strides[k]) % self.shape[k]).collect()
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(self.strides()).map(|(c, s)| c * s).sum()
    }

    pub fn cell_center(&self, idx: usize) -> Vec<f64> {
        self.coords(idx)
            .iter()
            .zip(&self.origin)
            .map(|(&i, &o)| o + (i as f64 + 0.5) * self.h)
            .collect()
    }

    fn on_border(&self, idx: usize) -> bool {
        self.coords(idx).iter().zip(&self.shape).any(|(&i, &n)| i == 0 || i + 1 == n)
    }

    /// Face neighbours of an interior (non-border) cell.
    pub fn face_neighbors(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        self.strides().into_iter().flat_map(move |s| [idx - s, idx + s])
    }

    /// Inside cells sharing at least one face with an outside cell.
    pub fn boundary_cells(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.mask[i] && self.face_neighbors(i).any(|j| !self.mask[j]))
            .collect()
    }

    /// Total `(m-1)`-measure of the faces between inside and outside cells.
    pub fn boundary_area(&self) -> f64 {
        let faces: usize = (0..self.len())
            .filter(|&i| self.mask[i])
            .map(|i| self.face_neighbors(i).filter(|&j| !self.mask[j]).count())
            .sum();
        faces as f64 * self.h.powi(self.dim() as i32 - 1)
    }

    pub fn bounding_diagonal(&self) -> f64 {
        self.h * self.shape.iter().map(|&n| (n * n) as f64).sum::<f64>().sqrt()
    }

    /// Integer position of the origin on the lattice `h Z^m`, when it lies on it.
    pub fn lattice_offset(&self) -> Option<Vec<i64>> {
        self.origin
            .iter()
            .map(|&o| {
                let r = (o / self.h).round();
                ((o / self.h - r).abs() < 1e-6).then_some(r as i64)
            })
            .collect()
    }
}

pub(crate) fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * shape[k + 1];
    }
    strides
}

/// `floor`, treating values within `1e-9` of an integer as that integer.
pub(crate) fn snap_floor(v: f64) -> i64 {
    let r = v.round();
    if (v - r).abs() < 1e-9 {
        r as i64
    } else {
        v.floor() as i64
    }
}

pub(crate) fn snap_ceil(v: f64) -> i64 {
    let r = v.round();
    if (v - r).abs() < 1e-9 {
        r as i64
    } else {
        v.ceil() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(n: usize) -> RasterDomain {
        let h = 1.0 / n as f64;
        RasterDomain::from_predicate(h, vec![-h, -h], vec![n + 2, n + 2], |p| {
            p.iter().all(|&x| x > 0.0 && x < 1.0)
        })
        .unwrap()
    }

    #[test]
    fn unit_square_measure_is_exact() {
        let d = square(100);
        assert_eq!(d.inside_count(), 10_000);
        assert!((d.measure() - 1.0).abs() < 1e-12);
        assert!((d.boundary_area() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_empty_and_border_touching_masks() {
        assert!(RasterDomain::new(0.1, vec![0.0, 0.0], vec![3, 3], vec![false; 9]).is_err());
        let mut mask = vec![false; 9];
        mask[0] = true;
        assert!(RasterDomain::new(0.1, vec![0.0, 0.0], vec![3, 3], mask).is_err());
        let mut mask = vec![false; 9];
        mask[4] = true;
        assert!(RasterDomain::new(0.1, vec![0.0, 0.0], vec![3, 3], mask.clone()).is_ok());
        assert!(RasterDomain::new(-0.1, vec![0.0, 0.0], vec![3, 3], mask).is_err());
    }

    #[test]
    fn index_round_trip() {
        let d = square(7);
        for idx in [0, 5, 17, 80] {
            assert_eq!(d.index(&d.coords(idx)), idx);
        }
        assert_eq!(d.lattice_offset(), Some(vec![-1, -1]));
    }
}
