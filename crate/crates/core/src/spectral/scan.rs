//! Courant-sharp detection and Pleijel ratios.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::nodal::label_sign_components;
use super::SpectrumResult;
use crate::bounds::BoundReport;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Random unit combinations tried inside each multi-member cluster.
    pub rotations: usize,
    pub seed: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { rotations: 8, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub n: usize,
    pub lambda: f64,
    /// Nodal domains of the computed basis vector.
    pub nu: usize,
    pub cluster_id: usize,
    pub is_first_of_cluster: bool,
    /// Largest count over the basis vectors and random combinations of the
    /// cluster; only set on the first index of a cluster.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cluster_max_nu: Option<usize>,
    pub is_courant_sharp: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub lambda_star: f64,
    pub count_star: f64,
    /// Sharp indices with `lambda_n > lambda_star` or `n > count_star`.
    pub violations: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CourantScan {
    pub records: Vec<ScanRecord>,
    pub sharp_set: Vec<usize>,
    /// Indices whose tested eigenfunctions exceed Courant's count.
    pub courant_violations: Vec<usize>,
    pub rotations_per_cluster: usize,
    /// A cluster without a witness is "not witnessed at this resolution",
    /// which does not prove that it is not sharp.
    pub note: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_check: Option<BoundCheck>,
}

struct ClusterProbe {
    first: usize,
    max_nu: usize,
    witnessed: bool,
}

fn probe_cluster(spectrum: &SpectrumResult, members: &[usize], opts: &ScanOptions, basis_nu: &[usize]) -> ClusterProbe {
    let first = members[0];
    let mut max_nu = members.iter().map(|&n| basis_nu[n - 1]).max().unwrap_or(0);
    let mut witnessed = basis_nu[first - 1..first - 1 + members.len()].contains(&first);
    if members.len() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (first as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let vectors: Vec<&Vec<f64>> = members.iter().map(|&n| &spectrum.eigenvectors[n - 1]).collect();
        let norms: Vec<f64> = vectors.iter().map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
        let len = vectors[0].len();
        for _ in 0..opts.rotations {
            let mut c: Vec<f64> = (0..members.len()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let s = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            c.iter_mut().for_each(|x| *x /= s);
            let mut w = vec![0.0; len];
            for ((v, nv), ci) in vectors.iter().zip(&norms).zip(&c) {
                for (wi, vi) in w.iter_mut().zip(v.iter()) {
                    *wi += ci * vi / nv;
                }
            }
            let nu = label_sign_components(&spectrum.domain, &w).0;
            max_nu = max_nu.max(nu);
            witnessed |= nu == first;
        }
    }
    ClusterProbe { first, max_nu, witnessed }
}

/// Counts nodal domains for every computed eigenpair and flags the
/// Courant-sharp indices.
///
/// An index is flagged when it is the first of its cluster and some tested
/// eigenfunction of the cluster has exactly that many nodal domains.
pub fn courant_sharp_scan(
    spectrum: &SpectrumResult,
    bounds: Option<&BoundReport>,
    opts: &ScanOptions,
) -> Result<CourantScan> {
    if spectrum.is_empty() {
        return Err(Error::invalid("spectrum", "no eigenpairs to scan"));
    }
    let basis_nu: Vec<usize> = spectrum
        .eigenvectors
        .par_iter()
        .map(|v| label_sign_components(&spectrum.domain, v).0)
        .collect();
    let firsts: Vec<usize> = (1..=spectrum.len()).filter(|&n| spectrum.cluster_start(n) == n).collect();
    let probes: Vec<ClusterProbe> = firsts
        .par_iter()
        .map(|&n| probe_cluster(spectrum, &spectrum.cluster_members(n), opts, &basis_nu))
        .collect();

    let mut records = Vec::with_capacity(spectrum.len());
    let mut sharp_set = Vec::new();
    let mut courant_violations = Vec::new();
    for n in 1..=spectrum.len() {
        let probe = probes.iter().find(|p| p.first == n);
        let sharp = probe.is_some_and(|p| p.witnessed);
        if sharp {
            sharp_set.push(n);
        }
        let cluster_first = spectrum.cluster_start(n);
        if basis_nu[n - 1] > n || probe.is_some_and(|p| p.max_nu > cluster_first) {
            courant_violations.push(n);
        }
        records.push(ScanRecord {
            n,
            lambda: spectrum.eigenvalues[n - 1],
            nu: basis_nu[n - 1],
            cluster_id: spectrum.cluster_ids[n - 1],
            is_first_of_cluster: probe.is_some(),
            cluster_max_nu: probe.map(|p| p.max_nu),
            is_courant_sharp: sharp,
        });
    }
    let bound_check = bounds.map(|b| BoundCheck {
        lambda_star: b.lambda_star,
        count_star: b.count_star,
        violations: sharp_set
            .iter()
            .copied()
            .filter(|&n| spectrum.eigenvalues[n - 1] > b.lambda_star || n as f64 > b.count_star)
            .collect(),
    });
    Ok(CourantScan {
        records,
        sharp_set,
        courant_violations,
        rotations_per_cluster: opts.rotations,
        note: "sharp means witnessed by a tested eigenfunction; unflagged clusters are not witnessed at this resolution",
        bound_check,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PleijelRatios {
    /// `(n, nu_n / n)` for the computed basis vectors.
    pub ratios: Vec<(usize, f64)>,
    /// Maximum ratio over `n` in `[k/2, k]`.
    pub max_upper_half: f64,
}

pub fn pleijel_ratio(spectrum: &SpectrumResult) -> Result<PleijelRatios> {
    let k = spectrum.len();
    if k < 50 {
        return Err(Error::invalid("k", format!("need at least 50 eigenpairs, got {k}")));
    }
    let ratios: Vec<(usize, f64)> = spectrum
        .eigenvectors
        .par_iter()
        .enumerate()
        .map(|(i, v)| (i + 1, label_sign_components(&spectrum.domain, v).0 as f64 / (i + 1) as f64))
        .collect();
    let max_upper_half = ratios.iter().filter(|(n, _)| 2 * n >= k).map(|&(_, r)| r).fold(0.0, f64::max);
    Ok(PleijelRatios { ratios, max_upper_half })
}
