//! Square von Koch snowflake with similarity ratio 1/3.
//!
//! Generation 0 is the unit square `(0,1)^2`. Every boundary segment of the
//! current generation (all of length `3^-(j-1)`) receives a square of side
//! `3^-j` centered on its middle third, pointing outward. Each new square
//! replaces its segment by five segments of length `3^-j`: the two flanking
//! thirds of the old segment and the three free sides of the square.

use serde::Serialize;

use crate::constants::pleijel_constants;
use crate::geometry::RasterDomain;
use crate::{Error, Result};

pub const MAX_GENERATIONS: u32 = 8;

/// Measure of the full snowflake.
pub const SNOWFLAKE_MEASURE: f64 = 2.0;

/// Upper end of the width range where the closed-form layer bound holds.
pub const MU_BOUND_LIMIT: f64 = 1.0 / 18.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Square {
    pub center: [f64; 2],
    pub side: f64,
    pub generation: u32,
}

impl Square {
    pub fn lower(&self) -> [f64; 2] {
        [self.center[0] - 0.5 * self.side, self.center[1] - 0.5 * self.side]
    }

    pub fn upper(&self) -> [f64; 2] {
        [self.center[0] + 0.5 * self.side, self.center[1] + 0.5 * self.side]
    }

    pub fn interiors_overlap(&self, other: &Square) -> bool {
        let reach = 0.5 * (self.side + other.side) * (1.0 - 1e-12);
        (0..2).all(|k| (self.center[k] - other.center[k]).abs() < reach)
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    mid: [f64; 2],
    along: [f64; 2],
    normal: [f64; 2],
    len: f64,
}

fn offset(p: [f64; 2], d: [f64; 2], t: f64) -> [f64; 2] {
    [p[0] + t * d[0], p[1] + t * d[1]]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnowflakeSpec {
    pub generations: u32,
    pub squares: Vec<Square>,
}

pub fn build_snowflake(generations: u32) -> Result<SnowflakeSpec> {
    if generations > MAX_GENERATIONS {
        return Err(Error::invalid(
            "generations",
            format!("snowflake truncation must be in 0..={MAX_GENERATIONS}, got {generations}"),
        ));
    }
    let mut squares = vec![Square { center: [0.5, 0.5], side: 1.0, generation: 0 }];
    let mut segments: Vec<Segment> = [
        ([0.5, 0.0], [1.0, 0.0], [0.0, -1.0]),
        ([1.0, 0.5], [0.0, 1.0], [1.0, 0.0]),
        ([0.5, 1.0], [-1.0, 0.0], [0.0, 1.0]),
        ([0.0, 0.5], [0.0, -1.0], [-1.0, 0.0]),
    ]
    .into_iter()
    .map(|(mid, along, normal)| Segment { mid, along, normal, len: 1.0 })
    .collect();

    for generation in 1..=generations {
        let mut next = Vec::with_capacity(segments.len() * 5);
        for seg in &segments {
            let side = seg.len / 3.0;
            let center = offset(seg.mid, seg.normal, 0.5 * side);
            squares.push(Square { center, side, generation });
            for t in [-side, side] {
                next.push(Segment { mid: offset(seg.mid, seg.along, t), len: side, ..*seg });
            }
            next.push(Segment { mid: offset(seg.mid, seg.normal, side), len: side, ..*seg });
            for sign in [-1.0, 1.0] {
                let dir = [sign * seg.along[0], sign * seg.along[1]];
                next.push(Segment {
                    mid: offset(center, dir, 0.5 * side),
                    along: seg.normal,
                    normal: dir,
                    len: side,
                });
            }
        }
        segments = next;
    }
    Ok(SnowflakeSpec { generations, squares })
}

impl SnowflakeSpec {
    /// `1 + sum_{j <= J} 4 5^(j-1) 9^-j = 2 - (5/9)^J`.
    pub fn truncated_measure(&self) -> f64 {
        let mut total = 1.0;
        for j in 1..=self.generations as i32 {
            total += 4.0 * 5f64.powi(j - 1) / 9f64.powi(j);
        }
        total
    }

    /// Sum of the square perimeters, interfaces included.
    pub fn total_edge_length(&self) -> f64 {
        self.squares.iter().map(|s| 4.0 * s.side).sum()
    }

    pub fn count_in_generation(&self, generation: u32) -> usize {
        self.squares.iter().filter(|s| s.generation == generation).count()
    }

    /// Cell-exact raster at `h = 3^-J / refine`.
    pub fn rasterize(&self, refine: usize) -> Result<RasterDomain> {
        if refine == 0 {
            return Err(Error::invalid("refine", "must be at least 1"));
        }
        let cells_per_unit = 3usize.pow(self.generations) * refine;
        let h = 1.0 / cells_per_unit as f64;
        // the snowflake lies in [-1/2, 3/2]^2
        let pad = cells_per_unit.div_ceil(2) as i64 + 1;
        let n = cells_per_unit + 2 * pad as usize;
        let total = n * n;
        if total > 200_000_000 {
            return Err(Error::Scale(format!("{total} raster cells")));
        }
        let mut mask = vec![false; total];
        let to_index = |x: f64| ((x * cells_per_unit as f64).round() as i64 + pad) as usize;
        for sq in &self.squares {
            let (lo, hi) = (sq.lower(), sq.upper());
            let (x0, x1) = (to_index(lo[0]), to_index(hi[0]));
            let (y0, y1) = (to_index(lo[1]), to_index(hi[1]));
            for i in x0..x1 {
                mask[i * n + y0..i * n + y1].fill(true);
            }
        }
        let origin = -(pad as f64) * h;
        RasterDomain::new(h, vec![origin, origin], vec![n, n], mask)
    }

    /// Width such that the raster lies cell-exact: `h` must divide `3^-J`.
    pub fn refine_for(&self, h: f64) -> Result<usize> {
        let q = 3f64.powi(-(self.generations as i32)) / h;
        let r = q.round();
        if r < 1.0 || (q - r).abs() > 1e-9 * q {
            return Err(Error::invalid(
                "h",
                format!("{h} does not divide 3^-{} exactly", self.generations),
            ));
        }
        Ok(r as usize)
    }
}

/// Interior Minkowski dimension of the snowflake boundary, `log 5 / log 3`.
pub fn snowflake_dimension() -> f64 {
    5f64.ln() / 3f64.ln()
}

fn mu_bound_coefficient() -> f64 {
    84.0 / 5.0 * 2f64.powf(-snowflake_dimension())
}

/// Closed-form bound `(84/5) 2^-d eps^(2-d)` on the snowflake boundary
/// layer, `d = log 5 / log 3`, valid for `0 < eps < 1/18`.
pub fn snowflake_mu_upper(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < MU_BOUND_LIMIT) {
        return Err(Error::OutOfValidity { what: "snowflake_mu_upper", valid: "0 < eps < 1/18", value: eps });
    }
    Ok(mu_bound_coefficient() * eps.powf(2.0 - snowflake_dimension()))
}

/// Root of `snowflake_mu_upper(eps) = 1 - gamma_2`, a lower bound for the
/// critical width of the snowflake.
pub fn snowflake_epsilon_lower() -> f64 {
    let target = pleijel_constants(2).expect("m = 2 is supported").one_minus_gamma();
    (target / mu_bound_coefficient()).powf(1.0 / (2.0 - snowflake_dimension()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnowflakeCountBound {
    /// `64 pi j0^4 / (j0^2 - 4)^2`
    pub prefactor: f64,
    pub eps: f64,
    pub count: f64,
}

/// Upper bound on the number of Courant-sharp eigenvalues of the snowflake.
pub fn snowflake_count_bound() -> Result<SnowflakeCountBound> {
    let c = pleijel_constants(2)?;
    let j2 = c.lambda1_ball;
    let prefactor = 64.0 * std::f64::consts::PI * j2 * j2 / ((j2 - 4.0) * (j2 - 4.0));
    let eps = snowflake_epsilon_lower();
    let count = prefactor / (eps * eps);
    if count > 1.5e8 {
        return Err(Error::Invariant(format!("snowflake count bound {count} exceeds 1.5e8")));
    }
    Ok(SnowflakeCountBound { prefactor, eps, count })
}
