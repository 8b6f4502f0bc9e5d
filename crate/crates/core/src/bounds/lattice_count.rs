//! Dirichlet counting function of a cube: lattice points of `N^m` strictly
//! inside a ball, and the Gauss-type lower estimate for it.

use serde::Serialize;
use std::f64::consts::PI;

use crate::constants::unit_ball_volume;
use crate::geometry::{lattice_cube_count, RasterDomain};
use crate::{Error, Result};

/// Largest `eps sqrt(lambda) / pi` accepted by the exact enumeration.
pub const ENUMERATION_LIMIT: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussMode {
    Exact,
    LowerBound,
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `#{k in N^dim : |k|^2 <= limit}`, `N = {1, 2, ...}`.
fn count_at_most(dim: usize, limit: u64) -> u64 {
    match dim {
        0 => 1,
        1 => isqrt(limit),
        _ => (1..=isqrt(limit)).map(|k| count_at_most(dim - 1, limit - k * k)).sum(),
    }
}

/// `#{k in N^m : |k|^2 < radius_sq}`.
///
/// `radius_sq` within `1e-12` (relative) of an integer is treated as that
/// integer, so that eigenvalues equal to the cut-off up to rounding are not
/// counted.
pub fn lattice_points_below(m: usize, radius_sq: f64) -> u64 {
    if !(radius_sq > 0.0) {
        return 0;
    }
    let r = radius_sq.round();
    let limit = if (radius_sq - r).abs() <= 1e-12 * radius_sq.max(1.0) {
        (r as u64).saturating_sub(1)
    } else {
        radius_sq.floor() as u64
    };
    count_at_most(m, limit)
}

/// `N_{C_eps}(lambda)` for the open cube of side `eps` in `R^m`, either
/// exactly or through `(omega_m / 2^m)(eps sqrt(lambda)/pi - sqrt(m))_+^m`.
pub fn gauss_cube_count(m: usize, eps: f64, lambda: f64, mode: GaussMode) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("m", "dimension must be positive"));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::invalid("eps", format!("must be positive, got {eps}")));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::invalid("lambda", format!("must be finite and >= 0, got {lambda}")));
    }
    let radius = eps * lambda.sqrt() / PI;
    match mode {
        GaussMode::Exact => {
            if radius > ENUMERATION_LIMIT {
                return Err(Error::Scale(format!(
                    "lattice radius {radius} exceeds the enumeration limit {ENUMERATION_LIMIT}"
                )));
            }
            Ok(lattice_points_below(m, radius * radius) as f64)
        }
        GaussMode::LowerBound => {
            let reach = (radius - (m as f64).sqrt()).max(0.0);
            Ok(unit_ball_volume(m) / 2f64.powi(m as i32) * reach.powi(m as i32))
        }
    }
}

/// `M(eps) * N_{C_eps}(lambda)`, a lower bound for the counting function of
/// the raster by Dirichlet bracketing.
pub fn bracketing_lower_bound(domain: &RasterDomain, eps: f64, lambda: f64) -> Result<f64> {
    let cubes = lattice_cube_count(domain, eps)?;
    let per_cube = gauss_cube_count(domain.dim(), eps, lambda, GaussMode::Exact)?;
    Ok(cubes.count as f64 * per_cube)
}
