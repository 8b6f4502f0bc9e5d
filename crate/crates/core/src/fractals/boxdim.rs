use std::collections::HashSet;

use serde::Serialize;

use crate::geometry::RasterDomain;
use crate::{Error, Result};

const MIN_SCALES: usize = 4;
/// Coarsest box is at most this fraction of the smallest raster side.
const MAX_BOX_FRACTION: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxDimension {
    pub dimension: f64,
    /// `(box side, occupied boxes)` per dyadic scale.
    pub scales: Vec<(f64, usize)>,
}

/// Box-counting estimate of the boundary dimension of a raster.
///
/// Boundary cells are inside cells with an outside face neighbour. Boxes of
/// `2^k` cells, `k = 1, 2, ...`, are counted until a box exceeds 1/8 of the
/// smallest raster side; the estimate is the least-squares slope of
/// `log(count)` against `log(1/side)`.
pub fn box_dimension_estimate(domain: &RasterDomain) -> Result<BoxDimension> {
    let boundary = domain.boundary_cells();
    let coords: Vec<Vec<usize>> = boundary.iter().map(|&i| domain.coords(i)).collect();
    let min_side = *domain.shape().iter().min().unwrap();
    let mut scales = Vec::new();
    let mut k = 1;
    while (1usize << k) * MAX_BOX_FRACTION <= min_side {
        let boxes: HashSet<Vec<usize>> =
            coords.iter().map(|c| c.iter().map(|&i| i >> k).collect()).collect();
        scales.push(((1usize << k) as f64 * domain.h(), boxes.len()));
        k += 1;
    }
    if scales.len() < MIN_SCALES {
        return Err(Error::Scale(format!(
            "only {} dyadic scales fit in a raster of side {min_side}; need {MIN_SCALES}",
            scales.len()
        )));
    }
    let pts: Vec<(f64, f64)> =
        scales.iter().map(|&(side, n)| ((1.0 / side).ln(), (n as f64).ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(BoxDimension { dimension: sxy / sxx, scales })
}
