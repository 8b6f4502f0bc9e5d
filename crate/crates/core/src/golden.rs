//! Built-in reference checks against the published numbers, run by the CLI
//! `--paper-check` flag.

use serde::Serialize;
use std::f64::consts::PI;

use crate::bounds::{bound_report, convex_bounds, weyl_leading, EpsRoute, ExactSpectrum};
use crate::constants::{bessel_zero, pleijel_constants};
use crate::domain::Domain;
use crate::fractals::{build_snowflake, cube_fractal_count_bound, snowflake_count_bound, snowflake_epsilon_lower};
use crate::geometry::{ConvexBody, Disk, RasterDomain};
use crate::spectral::{courant_sharp_scan, solve_dirichlet_spectrum, ScanOptions, SolverOptions};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(criterion: u8, name: &'static str, passed: bool, detail: String) -> Self {
        Self { criterion, name, passed, detail }
    }
}

fn within(value: f64, target: f64, rel: f64) -> bool {
    (value - target).abs() <= rel * target.abs()
}

pub fn snowflake_width() -> Check {
    let eps = snowflake_epsilon_lower();
    Check::new(1, "snowflake critical width", (0.00379..=0.00380).contains(&eps), format!("eps = {eps:.6}"))
}

pub fn snowflake_count() -> Check {
    match snowflake_count_bound() {
        Ok(b) => Check::new(
            2,
            "snowflake count bound",
            b.count <= 1.5e8 && within(b.count, 1.472e8, 0.01),
            format!("count = {:.4e}", b.count),
        ),
        Err(e) => Check::new(2, "snowflake count bound", false, e.to_string()),
    }
}

pub fn convex_route() -> Result<Check> {
    let c = pleijel_constants(2)?;
    let disk = convex_bounds(&c, PI, 2.0 * PI)?.lambda_bound;
    let square = convex_bounds(&c, 1.0, 4.0)?.lambda_bound;
    let passed = disk < 1.2e6 && within(disk, 1.118e6, 0.005) && square < 4.5e6 && within(square, 4.473e6, 0.005);
    Ok(Check::new(3, "convex eigenvalue bounds", passed, format!("disk {disk:.4e}, square {square:.4e}")))
}

pub fn cube_fractal_uniform() -> Check {
    match cube_fractal_count_bound(1.0 / 3.0) {
        Ok(b) => Check::new(
            4,
            "cube fractal uniform bound",
            b.uniform <= 2.5e11 && within(b.uniform, 2.45e11, 0.01) && within(b.count, 4.22e9, 0.01) && b.count <= b.uniform,
            format!("uniform {:.4e}, s = 1/3 chain {:.4e}", b.uniform, b.count),
        ),
        Err(e) => Check::new(4, "cube fractal uniform bound", false, e.to_string()),
    }
}

/// Truncated measures for `J <= 8` and one cell-exact raster at `raster_generations`.
pub fn snowflake_measure(raster_generations: u32) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for j in 0..=8 {
        let k = build_snowflake(j)?;
        worst = worst.max((k.truncated_measure() - (2.0 - (5.0f64 / 9.0).powi(j as i32))).abs());
    }
    let k = build_snowflake(raster_generations)?;
    let raster = k.rasterize(1)?;
    let raster_err = (raster.measure() - k.truncated_measure()).abs();
    let allowed = raster.h() * k.total_edge_length();
    let k8 = build_snowflake(8)?.truncated_measure();
    Ok(Check::new(
        5,
        "snowflake measure",
        worst < 1e-12 && raster_err <= allowed && (2.0 - k8) <= 0.01,
        format!("analytic error {worst:.1e}, raster J = {raster_generations} error {raster_err:.2e} <= {allowed:.2e}, |K_8| = {k8:.6}"),
    ))
}

fn scan_domain(domain: &RasterDomain, bounds_domain: &Domain) -> Result<(Vec<f64>, Vec<usize>, bool)> {
    let spectrum = solve_dirichlet_spectrum(domain, 15, &SolverOptions::default())?;
    let c = pleijel_constants(2)?;
    let report = bound_report(bounds_domain, &c, EpsRoute::Geometric)?;
    let scan = courant_sharp_scan(&spectrum, Some(&report), &ScanOptions::default())?;
    let dominated = scan.bound_check.as_ref().is_some_and(|b| b.violations.is_empty());
    Ok((spectrum.eigenvalues, scan.sharp_set, dominated))
}

/// Square and disk at `h = 1/128`: spectra, sharp sets and bound dominance.
pub fn spectral_checks() -> Result<Vec<Check>> {
    let h = 1.0 / 128.0;
    let square = RasterDomain::rasterize(&ConvexBody::rectangle(0.0, 0.0, 1.0, 1.0)?, h)?;
    let (values, sharp, square_ok) = scan_domain(&square, &Domain::Raster(square.clone()))?;
    let exact = ExactSpectrum::Rectangle { width: 1.0, height: 1.0 }.lowest(10)?;
    let spectrum_ok = values.iter().zip(&exact).all(|(v, e)| within(*v, *e, 0.01));
    let square_check = Check::new(
        6,
        "square spectrum and Courant scan",
        spectrum_ok && sharp == [1, 2, 4] && within(values[3], 8.0 * PI * PI, 0.01),
        format!("lambda_4 = {:.4}, sharp = {sharp:?}", values[3]),
    );

    let disk = RasterDomain::rasterize(&Disk::unit(), h)?;
    let (values, disk_sharp, disk_ok) = scan_domain(&disk, &Domain::Raster(disk.clone()))?;
    let j02 = bessel_zero(0.0, 2)?.value;
    let fourth = distinct(&values, 0.01).get(3).copied().unwrap_or(f64::NAN);
    let disk_check = Check::new(
        7,
        "disk spectrum and Courant scan",
        disk_sharp == [1, 2, 4] && within(fourth, j02 * j02, 0.02),
        format!("fourth distinct = {fourth:.4} vs {:.4}, sharp = {disk_sharp:?}", j02 * j02),
    );
    let dominance = Check::new(
        11,
        "bound dominance",
        square_ok && disk_ok,
        format!("square {}, disk {}", if square_ok { "ok" } else { "violated" }, if disk_ok { "ok" } else { "violated" }),
    );
    Ok(vec![square_check, disk_check, dominance])
}

/// Distinct values of an ascending list, merging neighbours closer than
/// `tol` (relative). Grid anisotropy splits the disk's double eigenvalues
/// by `O(h^2)`, so the merge tolerance has to sit above that splitting.
pub fn distinct(values: &[f64], tol: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &v in values {
        match out.last() {
            Some(&last) if v - last <= tol * v.abs() => {}
            _ => out.push(v),
        }
    }
    out
}

pub fn weyl_sanity() -> Result<Check> {
    let lambda = 1e4 * PI * PI;
    let n = ExactSpectrum::Rectangle { width: 1.0, height: 1.0 }.counting(lambda)? as f64;
    let ratio = n / weyl_leading(2, 1.0, lambda)?;
    Ok(Check::new(10, "Weyl sanity", (0.9..=1.0).contains(&ratio), format!("N / (lambda / 4 pi) = {ratio:.5}")))
}

/// The closed-form checks, which run in well under a second.
pub fn analytic_checks() -> Result<Vec<Check>> {
    Ok(vec![snowflake_width(), snowflake_count(), convex_route()?, cube_fractal_uniform(), weyl_sanity()?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_checks_pass() {
        for c in analytic_checks().unwrap() {
            assert!(c.passed, "{c:?}");
        }
        assert!(snowflake_measure(3).unwrap().passed);
    }

    #[test]
    fn distinct_merges_close_values() {
        assert_eq!(distinct(&[1.0, 1.001, 2.0, 2.0], 0.01), vec![1.0, 2.0]);
    }
}
