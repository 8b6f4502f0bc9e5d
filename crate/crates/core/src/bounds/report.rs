//! Assembling the Courant-sharp bounds for one domain.

use serde::Serialize;

use super::{courant_sharp_count_bound, courant_sharp_lambda_bound};
use crate::constants::PleijelConstants;
use crate::domain::Domain;
use crate::geometry::epsilon_omega;
use crate::{Error, Result};

/// Where the critical width comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsRoute {
    /// Measure the boundary layer of the given geometry; fractals, which have
    /// no such geometry, fall back to their analytic bound.
    Geometric,
    /// Use the closed-form lower bound; the measured width, when available,
    /// is kept as a diagnostic.
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub m: usize,
    pub volume: f64,
    pub gamma: f64,
    pub eps_omega: f64,
    pub lambda_star: f64,
    pub count_star: f64,
    pub threshold_index: u64,
    pub resolution_h: Option<f64>,
    pub eps_provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_diagnostic: Option<f64>,
}

impl BoundReport {
    pub fn from_width(
        constants: &PleijelConstants,
        volume: f64,
        eps_omega: f64,
        resolution_h: Option<f64>,
        eps_provenance: String,
    ) -> Result<Self> {
        let count = courant_sharp_count_bound(constants, volume, eps_omega)?;
        Ok(Self {
            m: constants.m,
            volume,
            gamma: constants.gamma_m,
            eps_omega,
            lambda_star: courant_sharp_lambda_bound(constants, eps_omega)?,
            count_star: count.count_star,
            threshold_index: count.threshold_index,
            resolution_h,
            eps_provenance,
            eps_diagnostic: None,
        })
    }
}

pub fn bound_report(domain: &Domain, constants: &PleijelConstants, route: EpsRoute) -> Result<BoundReport> {
    if domain.dim() != constants.m {
        return Err(Error::DimensionMismatch { domain: domain.dim(), constants: constants.m });
    }
    let volume = domain.volume()?;
    let measured = domain
        .boundary_layer()
        .map(|layer| epsilon_omega(layer.as_ref(), constants))
        .transpose()?;
    let analytic = domain.analytic_width(constants)?;
    let measured_note = |h: Option<f64>| match h {
        Some(h) => format!("raster distance field at h = {h}"),
        None => format!("exact {} geometry", domain.kind()),
    };
    match (route, measured, analytic) {
        (EpsRoute::Analytic, measured, Some(bound)) => {
            let mut report = BoundReport::from_width(constants, volume, bound.value, None, bound.source.to_string())?;
            if let Some(m) = measured {
                report.eps_diagnostic = Some(m.value);
                report.resolution_h = m.resolution_h;
            }
            Ok(report)
        }
        (EpsRoute::Analytic, _, None) => Err(Error::invalid(
            "analytic",
            format!("no analytic width bound is known for a {} domain", domain.kind()),
        )),
        (EpsRoute::Geometric, Some(m), _) => {
            BoundReport::from_width(constants, volume, m.value, m.resolution_h, measured_note(m.resolution_h))
        }
        (EpsRoute::Geometric, None, Some(bound)) => BoundReport::from_width(
            constants,
            volume,
            bound.value,
            None,
            format!("{} (no measurable geometry)", bound.source),
        ),
        (EpsRoute::Geometric, None, None) => {
            Err(Error::InvalidDomain(format!("{} domain has no width estimate", domain.kind())))
        }
    }
}
