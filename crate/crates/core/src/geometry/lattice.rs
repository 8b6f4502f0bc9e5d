use serde::Serialize;

use super::raster::RasterDomain;
use crate::{Error, Result};

/// Number of open lattice cubes of side `eps` contained in a domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubeCount {
    pub eps: f64,
    pub count: u64,
    pub covered_measure: f64,
}

/// Counts cubes of `(Z eps)^m` lying inside the raster.
///
/// `eps` must be a whole number of cells. The cube lattice is anchored at the
/// global lattice `h Z^m` when the raster origin lies on it (true for every
/// raster this crate builds), otherwise at the raster origin.
pub fn lattice_cube_count(domain: &RasterDomain, eps: f64) -> Result<CubeCount> {
    let h = domain.h();
    let ratio = eps / h;
    let cells = ratio.round();
    if !(eps > 0.0) || cells < 1.0 || (ratio - cells).abs() > 1e-9 * ratio.max(1.0) {
        return Err(Error::Alignment { eps, h });
    }
    let q = cells as i64;
    let m = domain.dim();
    let shape = domain.shape();
    let offset = domain.lattice_offset().unwrap_or_else(|| vec![0; m]);

    // cube index range per axis, in global lattice units
    let lo: Vec<i64> = offset.iter().map(|&o| o.div_euclid(q)).collect();
    let hi: Vec<i64> =
        offset.iter().zip(shape).map(|(&o, &n)| (o + n as i64 - 1).div_euclid(q)).collect();

    let mut count = 0u64;
    let mut cube = lo.clone();
    let mut cell = vec![0usize; m];
    'cubes: loop {
        // every cell of the cube must be in range and inside
        let mut ok = true;
        let mut local = vec![0i64; m];
        'cells: loop {
            for k in 0..m {
                let g = cube[k] * q + local[k] - offset[k];
                if g < 0 || g >= shape[k] as i64 {
                    ok = false;
                    break 'cells;
                }
                cell[k] = g as usize;
            }
            if !domain.is_inside(domain.index(&cell)) {
                ok = false;
                break;
            }
            let mut k = m;
            loop {
                if k == 0 {
                    break 'cells;
                }
                k -= 1;
                local[k] += 1;
                if local[k] < q {
                    break;
                }
                local[k] = 0;
            }
        }
        if ok {
            count += 1;
        }
        let mut k = m;
        loop {
            if k == 0 {
                break 'cubes;
            }
            k -= 1;
            cube[k] += 1;
            if cube[k] <= hi[k] {
                break;
            }
            cube[k] = lo[k];
        }
    }
    Ok(CubeCount { eps, count, covered_measure: count as f64 * eps.powi(m as i32) })
}
