//! The polyhedron `D_s`: a unit cube with cubes of side `s^j` attached to
//! the centres of the free faces of generation `j - 1`, faces kept parallel.

use serde::Serialize;

use crate::constants::pleijel_constants;
use crate::geometry::{snap_ceil, snap_floor, RasterDomain};
use crate::{Error, Result};

pub const MAX_GENERATIONS: u32 = 4;

/// Largest ratio for which no two cubes overlap, `sqrt(2) - 1`.
pub fn max_ratio() -> f64 {
    std::f64::consts::SQRT_2 - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cube {
    pub center: [f64; 3],
    pub side: f64,
    pub generation: u32,
}

impl Cube {
    pub fn interiors_overlap(&self, other: &Cube) -> bool {
        let reach = 0.5 * (self.side + other.side) * (1.0 - 1e-12);
        (0..3).all(|k| (self.center[k] - other.center[k]).abs() < reach)
    }

    pub fn closures_touch(&self, other: &Cube) -> bool {
        let reach = 0.5 * (self.side + other.side) * (1.0 + 1e-12);
        (0..3).all(|k| (self.center[k] - other.center[k]).abs() <= reach)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubeFractalSpec {
    pub s: f64,
    pub generations: u32,
    pub cubes: Vec<Cube>,
}

fn check_ratio(s: f64) -> Result<()> {
    if !(s > 0.0 && s <= max_ratio() * (1.0 + 1e-12)) {
        return Err(Error::OutOfValidity { what: "cube fractal ratio s", valid: "0 < s <= sqrt(2) - 1", value: s });
    }
    Ok(())
}

const DIRECTIONS: [[f64; 3]; 6] = [
    [1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, -1.0, 0.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0],
];

pub fn build_cube_fractal(s: f64, generations: u32) -> Result<CubeFractalSpec> {
    check_ratio(s)?;
    if generations > MAX_GENERATIONS {
        return Err(Error::invalid(
            "generations",
            format!("cube fractal truncation must be in 0..={MAX_GENERATIONS}, got {generations}"),
        ));
    }
    let mut cubes = vec![Cube { center: [0.5; 3], side: 1.0, generation: 0 }];
    // free faces as (cube index, outward direction)
    let mut faces: Vec<(usize, [f64; 3])> = DIRECTIONS.iter().map(|&d| (0, d)).collect();
    for generation in 1..=generations {
        let mut next = Vec::with_capacity(faces.len() * 5);
        for &(parent, normal) in &faces {
            let p = cubes[parent];
            let side = p.side * s;
            let reach = 0.5 * (p.side + side);
            let center = [
                p.center[0] + reach * normal[0],
                p.center[1] + reach * normal[1],
                p.center[2] + reach * normal[2],
            ];
            cubes.push(Cube { center, side, generation });
            let me = cubes.len() - 1;
            let back = [-normal[0], -normal[1], -normal[2]];
            next.extend(DIRECTIONS.iter().filter(|&&d| d != back).map(|&d| (me, d)));
        }
        faces = next;
    }
    let spec = CubeFractalSpec { s, generations, cubes };
    if let Some((a, b)) = spec.first_overlap() {
        return Err(Error::Invariant(format!("cubes {a} and {b} overlap at s = {s}")));
    }
    Ok(spec)
}

impl CubeFractalSpec {
    pub fn count_in_generation(&self, generation: u32) -> usize {
        self.cubes.iter().filter(|c| c.generation == generation).count()
    }

    /// First pair of cubes with intersecting interiors.
    pub fn first_overlap(&self) -> Option<(usize, usize)> {
        let n = self.cubes.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.cubes[a].interiors_overlap(&self.cubes[b]))
    }

    pub fn truncated_measure(&self) -> f64 {
        self.cubes.iter().map(|c| c.side.powi(3)).sum()
    }

    /// Raster by cell-center inclusion; cell-exact when `h` divides `s^J`
    /// and the cube faces land on `h Z^3`.
    pub fn rasterize(&self, h: f64) -> Result<RasterDomain> {
        if !(h > 0.0) {
            return Err(Error::invalid("h", format!("must be positive, got {h}")));
        }
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for c in &self.cubes {
            for k in 0..3 {
                lo[k] = lo[k].min(c.center[k] - 0.5 * c.side);
                hi[k] = hi[k].max(c.center[k] + 0.5 * c.side);
            }
        }
        let first: Vec<i64> = lo.iter().map(|&v| snap_floor(v / h) - 1).collect();
        let shape: Vec<usize> =
            hi.iter().zip(&first).map(|(&v, &f)| (snap_ceil(v / h) + 1 - f) as usize).collect();
        let total: usize = shape.iter().product();
        if total > 100_000_000 {
            return Err(Error::Scale(format!("{total} voxels at h = {h}")));
        }
        let origin: Vec<f64> = first.iter().map(|&f| f as f64 * h).collect();
        let mut mask = vec![false; total];
        let strides = crate::geometry::strides_of(&shape);
        for c in &self.cubes {
            // cells whose centers lie strictly inside the cube
            let range: Vec<(usize, usize)> = (0..3)
                .map(|k| {
                    let a = (c.center[k] - 0.5 * c.side - origin[k]) / h - 0.5;
                    let b = (c.center[k] + 0.5 * c.side - origin[k]) / h - 0.5;
                    let start = (snap_floor(a) + 1).max(0) as usize;
                    let end = snap_ceil(b).max(0) as usize;
                    (start, end.min(shape[k]))
                })
                .collect();
            for i in range[0].0..range[0].1 {
                for j in range[1].0..range[1].1 {
                    let row = i * strides[0] + j * strides[1];
                    if range[2].0 < range[2].1 {
                        mask[row + range[2].0..row + range[2].1].fill(true);
                    }
                }
            }
        }
        RasterDomain::new(h, origin, shape, mask)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubeFractalStats {
    /// `(1 + s^3) / (1 - 5 s^3)`
    pub measure: f64,
    /// `6 (1 - s^2) / (1 - 5 s^2)`
    pub surface: f64,
    /// `6 (1 + s^2) / (1 - 5 s^2)`, with `mu(eps) <= mu_slope * eps`.
    pub mu_slope: f64,
}

pub fn cube_fractal_stats(s: f64) -> Result<CubeFractalStats> {
    check_ratio(s)?;
    let (s2, s3) = (s * s, s * s * s);
    Ok(CubeFractalStats {
        measure: (1.0 + s3) / (1.0 - 5.0 * s3),
        surface: 6.0 * (1.0 - s2) / (1.0 - 5.0 * s2),
        mu_slope: 6.0 * (1.0 + s2) / (1.0 - 5.0 * s2),
    })
}

/// `(1/12)(1 - gamma_3)((1 - 5 s^2)/(1 + s^2)) |D_s|`.
pub fn cube_fractal_epsilon_lower(s: f64) -> Result<f64> {
    let stats = cube_fractal_stats(s)?;
    let c = pleijel_constants(3)?;
    Ok(0.5 * c.one_minus_gamma() * stats.measure / stats.mu_slope)
}

/// `6 * 12^4 * 15^(3/2) * (140 + 99 sqrt 2) * pi * (1 - 9/(2 pi^2))^-6`,
/// the bound that holds for every admissible `s`.
pub fn cube_fractal_uniform_bound() -> f64 {
    let pi = std::f64::consts::PI;
    let one_minus_gamma = 1.0 - 9.0 / (2.0 * pi * pi);
    6.0 * 12f64.powi(4)
        * 15f64.powf(1.5)
        * (140.0 + 99.0 * std::f64::consts::SQRT_2)
        * pi
        / one_minus_gamma.powi(6)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubeCountBound {
    pub s: f64,
    pub eps: f64,
    pub measure: f64,
    pub count: f64,
    pub uniform: f64,
}

/// `36 * 15^(3/2) * pi * (1 - gamma_3)^-3 * |D_s| / eps^3` with the width
/// from [`cube_fractal_epsilon_lower`].
pub fn cube_fractal_count_bound(s: f64) -> Result<CubeCountBound> {
    let stats = cube_fractal_stats(s)?;
    let eps = cube_fractal_epsilon_lower(s)?;
    let one_minus_gamma = pleijel_constants(3)?.one_minus_gamma();
    let count = 36.0 * 15f64.powf(1.5) * std::f64::consts::PI / one_minus_gamma.powi(3)
        * stats.measure
        / eps.powi(3);
    let uniform = cube_fractal_uniform_bound();
    if uniform > 2.5e11 {
        return Err(Error::Invariant(format!("uniform cube bound {uniform} exceeds 2.5e11")));
    }
    if count > uniform * (1.0 + 1e-12) {
        return Err(Error::Invariant(format!("bound {count} at s = {s} exceeds uniform bound {uniform}")));
    }
    Ok(CubeCountBound { s, eps, measure: stats.measure, count, uniform })
}
