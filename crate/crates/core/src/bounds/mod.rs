//! Eigenvalue counting estimates and the Courant-sharp bounds built on them.
//!
//! Everything here is a closed-form evaluation except the lattice counts,
//! which enumerate, and [`bound_report`], which may measure a domain.

mod exact;
mod lattice_count;
mod report;

pub use exact::ExactSpectrum;
pub use lattice_count::{
    bracketing_lower_bound, gauss_cube_count, lattice_points_below, GaussMode, ENUMERATION_LIMIT,
};
pub use report::{bound_report, BoundReport, EpsRoute};

use serde::Serialize;
use std::f64::consts::PI;

use crate::constants::{unit_ball_volume, PleijelConstants};
use crate::geometry::BoundaryLayer;
use crate::{Error, Result};

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::invalid(name, format!("must be finite and positive, got {value}")))
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::invalid(name, format!("must be finite and >= 0, got {value}")))
    }
}

/// Leading Weyl term `omega_m (2 pi)^-m |domain| lambda^(m/2)`.
pub fn weyl_leading(m: usize, volume: f64, lambda: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("m", "dimension must be positive"));
    }
    non_negative("volume", volume)?;
    non_negative("lambda", lambda)?;
    Ok(unit_ball_volume(m) / (2.0 * PI).powi(m as i32) * volume * lambda.powf(m as f64 / 2.0))
}

/// First eigenvalue of the ball with the given volume.
pub fn faber_krahn_lower(constants: &PleijelConstants, volume: f64) -> Result<f64> {
    positive("volume", volume)?;
    Ok(constants.lambda1_ball * (constants.omega_m / volume).powf(2.0 / constants.m as f64))
}

/// `(m/(m+2)) (2 pi)^2 omega_m^(-2/m) (n/|domain|)^(2/m)`.
pub fn li_yau_lower(m: usize, n: u64, volume: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("m", "dimension must be positive"));
    }
    if n == 0 {
        return Err(Error::invalid("n", "eigenvalue index starts at 1"));
    }
    positive("volume", volume)?;
    let mf = m as f64;
    Ok(mf / (mf + 2.0) * 4.0 * PI * PI * unit_ball_volume(m).powf(-2.0 / mf) * (n as f64 / volume).powf(2.0 / mf))
}

/// The width that balances the two remainder terms at `lambda`:
/// `2 pi m^(3/2) / ((1 - gamma_m) sqrt(lambda))`.
pub fn balancing_width(constants: &PleijelConstants, lambda: f64) -> Result<f64> {
    positive("lambda", lambda)?;
    let m = constants.m as f64;
    Ok(2.0 * PI * m.powf(1.5) / (constants.one_minus_gamma() * lambda.sqrt()))
}

/// Upper bound for the Weyl remainder and, when the spectrum is known, the
/// remainder itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemainderReport {
    pub lambda: f64,
    pub eps: f64,
    pub weyl_leading: f64,
    pub exact_count: Option<u64>,
    pub remainder: Option<f64>,
    pub upper_bound: f64,
}

/// `omega_m (2 pi)^-m [mu(sqrt(m) eps) lambda^(m/2) + pi m^(3/2) |domain| lambda^((m-1)/2) / eps]`
/// with `mu` capped at the full measure. `eps` defaults to
/// [`balancing_width`].
pub fn remainder_upper_bound(
    layer: &dyn BoundaryLayer,
    constants: &PleijelConstants,
    lambda: f64,
    eps: Option<f64>,
    exact: Option<&ExactSpectrum>,
) -> Result<RemainderReport> {
    if layer.dim() != constants.m {
        return Err(Error::DimensionMismatch { domain: layer.dim(), constants: constants.m });
    }
    positive("lambda", lambda)?;
    let eps = match eps {
        Some(e) => positive("eps", e)?,
        None => balancing_width(constants, lambda)?,
    };
    let m = constants.m as f64;
    let volume = layer.measure();
    let w = constants.weyl_constant();
    let mu = layer.layer_measure(m.sqrt() * eps).min(volume);
    let upper_bound =
        w * mu * lambda.powf(m / 2.0) + PI * m.powf(1.5) * w * volume * lambda.powf((m - 1.0) / 2.0) / eps;
    let weyl = w * volume * lambda.powf(m / 2.0);
    let exact_count = exact.map(|s| s.counting(lambda)).transpose()?;
    Ok(RemainderReport {
        lambda,
        eps,
        weyl_leading: weyl,
        exact_count,
        remainder: exact_count.map(|n| weyl - n as f64),
        upper_bound,
    })
}

/// Every Courant-sharp eigenvalue is at most `(2 pi m^2 / ((1 - gamma_m) eps))^2`.
pub fn courant_sharp_lambda_bound(constants: &PleijelConstants, eps_omega: f64) -> Result<f64> {
    positive("eps_omega", eps_omega)?;
    let m = constants.m as f64;
    Ok((2.0 * PI * m * m / (constants.one_minus_gamma() * eps_omega)).powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountBound {
    /// Upper bound on the number of Courant-sharp eigenvalues.
    pub count_star: f64,
    /// No `lambda_n` with `n >= threshold_index` is Courant-sharp.
    pub threshold_index: u64,
}

/// `omega_m (1 - gamma_m)^-m (m^3 (m + 2))^(m/2) |domain| / eps^m`.
pub fn courant_sharp_count_bound(constants: &PleijelConstants, volume: f64, eps_omega: f64) -> Result<CountBound> {
    positive("volume", volume)?;
    positive("eps_omega", eps_omega)?;
    let m = constants.m as f64;
    let count_star = constants.omega_m * constants.one_minus_gamma().powf(-m) * (m.powi(3) * (m + 2.0)).powf(m / 2.0)
        * volume
        / eps_omega.powf(m);
    // beyond 2^53 the integer threshold is no longer exact in f64
    if !(count_star < 9.007_199_254_740_992e15) {
        return Err(Error::Scale(format!("count bound {count_star:e} has no exact integer threshold")));
    }
    Ok(CountBound { count_star, threshold_index: count_star.floor() as u64 + 1 })
}

/// Bounds for convex sets, where `mu(eps) <= perimeter * eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvexBounds {
    pub eps_lower: f64,
    pub lambda_bound: f64,
    pub count_bound: f64,
}

/// `eps >= (1 - gamma_m) |domain| / (2 perimeter)` and the count bound
/// `omega_m (1 - gamma_m)^-2m (4 m^3 (m + 2))^(m/2) perimeter^m / |domain|^(m-1)`.
pub fn convex_bounds(constants: &PleijelConstants, volume: f64, perimeter: f64) -> Result<ConvexBounds> {
    positive("volume", volume)?;
    positive("perimeter", perimeter)?;
    let m = constants.m as f64;
    let g = constants.one_minus_gamma();
    let eps_lower = 0.5 * g * volume / perimeter;
    let count_bound = constants.omega_m * g.powf(-2.0 * m) * (4.0 * m.powi(3) * (m + 2.0)).powf(m / 2.0)
        * perimeter.powf(m)
        / volume.powf(m - 1.0);
    Ok(ConvexBounds { eps_lower, lambda_bound: courant_sharp_lambda_bound(constants, eps_lower)?, count_bound })
}
