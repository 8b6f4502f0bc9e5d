//! Sign components of grid functions.

use serde::Serialize;
use std::collections::VecDeque;

use super::SpectrumResult;
use crate::geometry::RasterDomain;
use crate::{Error, Result};

/// Entries with `|v| <= ZERO_FRACTION * max |v|` count as zero and stay
/// unlabelled. Without this, round-off on nodal lines that pass through
/// cell centres splinters them into spurious one-cell domains.
pub const ZERO_FRACTION: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodalDecomposition {
    pub eigen_index: usize,
    pub domain_count: usize,
    /// Component id per raster cell; `None` outside and on (numerical) zeros.
    #[serde(skip)]
    pub labels: Vec<Option<u32>>,
}

/// 4-connected components of the strictly positive and strictly negative
/// inside cells of `values`.
pub fn label_sign_components(domain: &RasterDomain, values: &[f64]) -> (usize, Vec<Option<u32>>) {
    let cutoff = ZERO_FRACTION * values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sign = |i: usize| -> i8 {
        if !domain.is_inside(i) || values[i].abs() <= cutoff {
            0
        } else if values[i] > 0.0 {
            1
        } else {
            -1
        }
    };
    let mut labels = vec![None; domain.len()];
    let mut count = 0u32;
    let mut queue = VecDeque::new();
    for start in 0..domain.len() {
        let s = sign(start);
        if s == 0 || labels[start].is_some() {
            continue;
        }
        labels[start] = Some(count);
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            for j in domain.face_neighbors(i) {
                if labels[j].is_none() && sign(j) == s {
                    labels[j] = Some(count);
                    queue.push_back(j);
                }
            }
        }
        count += 1;
    }
    (count as usize, labels)
}

pub fn nodal_domains(spectrum: &SpectrumResult, n: usize) -> Result<NodalDecomposition> {
    if n == 0 || n > spectrum.len() {
        return Err(Error::invalid("n", format!("must lie in 1..={}, got {n}", spectrum.len())));
    }
    let (domain_count, labels) = label_sign_components(&spectrum.domain, &spectrum.eigenvectors[n - 1]);
    Ok(NodalDecomposition { eigen_index: n, domain_count, labels })
}
