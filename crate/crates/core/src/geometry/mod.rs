//! Domains, boundary distances, the boundary-layer measure
//! `mu(eps) = |{x in domain : d(x, boundary) < eps}|` and the critical width
//! `eps(domain) = inf{eps : mu(eps) >= (1 - gamma_m) |domain| / 2}`.

mod convex;
mod disk;
mod distance;
mod lattice;
mod raster;

pub use convex::ConvexBody;
pub use disk::Disk;
pub use distance::DistanceField;
pub use lattice::{lattice_cube_count, CubeCount};
pub use raster::{RasterDomain, Region};
pub(crate) use raster::{snap_ceil, snap_floor, strides_of};

use serde::Serialize;

use crate::constants::PleijelConstants;
use crate::{Error, Result};

/// A set of finite measure whose boundary layer can be measured.
pub trait BoundaryLayer {
    fn dim(&self) -> usize;

    /// Lebesgue measure of the whole set.
    fn measure(&self) -> f64;

    /// `mu(eps)` for `eps >= 0`, without argument checks.
    fn layer_measure(&self, eps: f64) -> f64;

    /// A length beyond which `mu` equals the full measure.
    fn extent(&self) -> f64;

    /// Grid spacing, for discretised sets.
    fn resolution(&self) -> Option<f64> {
        None
    }

    fn mu(&self, eps: f64) -> Result<f64> {
        if !(eps >= 0.0) || !eps.is_finite() {
            return Err(Error::invalid("eps", format!("must be finite and >= 0, got {eps}")));
        }
        Ok(self.layer_measure(eps))
    }
}

/// `mu` sampled on an ascending grid of widths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MuCurve {
    pub eps_samples: Vec<f64>,
    pub mu_values: Vec<f64>,
    pub total_measure: f64,
}

pub fn mu_curve(layer: &dyn BoundaryLayer, eps_max: f64, steps: usize) -> Result<MuCurve> {
    if !(eps_max > 0.0) || !eps_max.is_finite() {
        return Err(Error::invalid("eps_max", format!("must be positive, got {eps_max}")));
    }
    if steps == 0 {
        return Err(Error::invalid("steps", "need at least one step"));
    }
    let eps_samples: Vec<f64> = (0..=steps).map(|i| eps_max * i as f64 / steps as f64).collect();
    let mu_values = eps_samples.iter().map(|&e| layer.layer_measure(e)).collect();
    Ok(MuCurve { eps_samples, mu_values, total_measure: layer.measure() })
}

/// The critical width together with its defining threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsilonOmega {
    pub value: f64,
    pub threshold: f64,
    pub residual: f64,
    /// Grid spacing the width was computed at; `None` for exact geometry.
    pub resolution_h: Option<f64>,
}

/// Bisection for the leftmost width where `mu` reaches the threshold.
///
/// The returned value satisfies `mu(value) >= threshold` and
/// `mu(value - tol) < threshold` with `tol = 1e-9 * extent`. On plateaus of
/// `mu` this is the left edge; `residual` records `|mu(value) - threshold|`.
pub fn epsilon_omega(layer: &dyn BoundaryLayer, constants: &PleijelConstants) -> Result<EpsilonOmega> {
    if layer.dim() != constants.m {
        return Err(Error::DimensionMismatch { domain: layer.dim(), constants: constants.m });
    }
    let threshold = 0.5 * constants.one_minus_gamma() * layer.measure();
    let extent = layer.extent();
    let tol = 1e-9 * extent;
    let (mut lo, mut hi) = (0.0, extent);
    if layer.layer_measure(hi) < threshold {
        return Err(Error::NumericFailure {
            what: "epsilon_omega",
            detail: format!("mu({hi}) stays below the threshold {threshold}"),
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if layer.layer_measure(mid) >= threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(EpsilonOmega {
        value: hi,
        threshold,
        residual: (layer.layer_measure(hi) - threshold).abs(),
        resolution_h: layer.resolution(),
    })
}
