//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Reference values are recomputed here from first principles
//! (hard-coded Bessel zeros, direct lattice enumeration, the closed-form
//! finite-difference spectrum) rather than taken from the library.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use courant_core::bounds::{
    bound_report, bracketing_lower_bound, convex_bounds, gauss_cube_count, remainder_upper_bound, BoundReport,
    EpsRoute, ExactSpectrum, GaussMode,
};
use courant_core::constants::pleijel_constants;
use courant_core::domain::Domain;
use courant_core::fractals::{build_snowflake, cube_fractal_count_bound, snowflake_count_bound, snowflake_epsilon_lower};
use courant_core::geometry::{ConvexBody, Disk, RasterDomain};
use courant_core::spectral::{courant_sharp_scan, solve_dirichlet_spectrum, ScanOptions, SolverOptions};

// scipy.special.jn_zeros
const J0_1: f64 = 2.404_825_557_695_773;
const J0_2: f64 = 5.520_078_110_286_311;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn gamma2() -> f64 {
    // (2 pi)^2 / (pi^2 j0^2)
    4.0 / (J0_1 * J0_1)
}

/// `#{(p, q) in N^2 : p^2 + q^2 < r2}` with integer `r2`.
fn lattice2(r2: u64) -> u64 {
    let mut count = 0;
    let mut p = 1;
    while p * p < r2 {
        let mut q = 1;
        while p * p + q * q < r2 {
            count += 1;
            q += 1;
        }
        p += 1;
    }
    count
}

fn c1_snowflake_width() -> Outcome {
    let d = 5f64.ln() / 3f64.ln();
    let oracle = ((1.0 - gamma2()) / (84.0 / 5.0 * 2f64.powf(-d))).powf(1.0 / (2.0 - d));
    let eps = snowflake_epsilon_lower();
    outcome(
        (0.00379..=0.00380).contains(&eps) && rel(eps, oracle) < 1e-12,
        format!("eps(K) >= {eps:.7} (oracle {oracle:.7})"),
    )
}

fn c2_snowflake_count() -> Outcome {
    let eps = snowflake_epsilon_lower();
    // omega_2 (1 - gamma)^-2 (8 * 4) |K| / eps^2 with |K| = 2
    let oracle = PI * 32.0 * 2.0 / ((1.0 - gamma2()).powi(2) * eps * eps);
    match snowflake_count_bound() {
        Ok(b) => outcome(
            b.count <= 1.5e8 && rel(b.count, 1.472e8) < 0.01 && rel(b.count, oracle) < 1e-10,
            format!("count = {:.5e} (oracle {oracle:.5e})", b.count),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c3_convex_route() -> Outcome {
    let c = pleijel_constants(2).unwrap();
    let g = 1.0 - gamma2();
    let oracle = |area: f64, perimeter: f64| (8.0 * PI / (g * 0.5 * g * area / perimeter)).powi(2);
    let disk = convex_bounds(&c, PI, 2.0 * PI).unwrap().lambda_bound;
    let square = convex_bounds(&c, 1.0, 4.0).unwrap().lambda_bound;
    outcome(
        disk < 1.2e6
            && rel(disk, 1.118e6) < 0.005
            && square < 4.5e6
            && rel(square, 4.473e6) < 0.005
            && rel(disk, oracle(PI, 2.0 * PI)) < 1e-10
            && rel(square, oracle(1.0, 4.0)) < 1e-10,
        format!("disk {disk:.5e} < 1.2e6, square {square:.5e} < 4.5e6"),
    )
}

fn c4_cube_fractal() -> Outcome {
    let g3 = 1.0 - 9.0 / (2.0 * PI * PI);
    let uniform_oracle =
        6.0 * 12f64.powi(4) * 15f64.powf(1.5) * (140.0 + 99.0 * 2f64.sqrt()) * PI / g3.powi(6);
    // s = 1/3: |D| = (1 + 1/27)/(1 - 5/27) = 14/11, slope 6(1 + 1/9)/(1 - 5/9) = 15
    let measure = 14.0 / 11.0;
    let eps = 0.5 * g3 * measure / 15.0;
    let chain_oracle = 36.0 * 15f64.powf(1.5) * PI / g3.powi(3) * measure / eps.powi(3);
    match cube_fractal_count_bound(1.0 / 3.0) {
        Ok(b) => outcome(
            b.uniform <= 2.5e11
                && rel(b.uniform, 2.45e11) < 0.01
                && rel(b.uniform, uniform_oracle) < 1e-12
                && rel(b.count, chain_oracle) < 1e-10
                && rel(b.count, 4.22e9) < 0.01
                && b.count <= b.uniform,
            format!("uniform {:.5e} <= 2.5e11, s = 1/3 chain {:.5e}", b.uniform, b.count),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c5_snowflake_measure() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut summed_worst: f64 = 0.0;
    for j in 0..=8u32 {
        let k = build_snowflake(j).unwrap();
        // summing up to 390625 areas carries its own rounding
        let summed: f64 = k.squares.iter().map(|s| s.side * s.side).sum();
        let exact = 2.0 - (5.0f64 / 9.0).powi(j as i32);
        worst = worst.max((k.truncated_measure() - exact).abs());
        summed_worst = summed_worst.max((summed - exact).abs());
    }
    let k8 = build_snowflake(8).unwrap();
    let raster = match k8.rasterize(1) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let err = (raster.measure() - k8.truncated_measure()).abs();
    let allowed = raster.h() * k8.total_edge_length();
    let gap = 2.0 - k8.truncated_measure();
    outcome(
        worst < 1e-14 && summed_worst < 1e-9 && err <= allowed && gap <= 0.01,
        format!("analytic error {worst:.1e} (square sum {summed_worst:.1e}); J = 8 raster error {err:.2e} <= {allowed:.2e}; 2 - |K_8| = {gap:.5}"),
    )
}

struct Run {
    eigenvalues: Vec<f64>,
    sharp: Vec<usize>,
    report: BoundReport,
}

fn scan(domain: RasterDomain) -> Run {
    let spectrum = solve_dirichlet_spectrum(&domain, 15, &SolverOptions::default()).unwrap();
    let report =
        bound_report(&Domain::Raster(domain), &pleijel_constants(2).unwrap(), EpsRoute::Geometric).unwrap();
    let scan = courant_sharp_scan(&spectrum, Some(&report), &ScanOptions::default()).unwrap();
    Run { eigenvalues: spectrum.eigenvalues, sharp: scan.sharp_set, report }
}

fn c6_square(run: &Run) -> Outcome {
    let h = 1.0 / 128.0;
    let mut continuum = Vec::new();
    let mut discrete = Vec::new();
    let s = |p: f64| (p * PI * h / 2.0).sin().powi(2);
    for p in 1..8 {
        for q in 1..8 {
            continuum.push(PI * PI * (p * p + q * q) as f64);
            discrete.push(4.0 / (h * h) * (s(p as f64) + s(q as f64)));
        }
    }
    continuum.sort_by(f64::total_cmp);
    discrete.sort_by(f64::total_cmp);
    let worst = run.eigenvalues[..10].iter().zip(&continuum).map(|(a, b)| rel(*a, *b)).fold(0.0, f64::max);
    let fd = run.eigenvalues.iter().zip(&discrete).map(|(a, b)| rel(*a, *b)).fold(0.0, f64::max);
    let l4 = run.eigenvalues[3];
    outcome(
        worst < 0.01 && fd < 1e-8 && run.sharp == [1, 2, 4] && rel(l4, 8.0 * PI * PI) < 0.01,
        format!(
            "max rel error {worst:.2e} (vs FD formula {fd:.1e}), lambda_4 = {l4:.4}, sharp = {:?}",
            run.sharp
        ),
    )
}

/// The square grid splits the disk's double eigenvalues by `O(h^2)`
/// (about 6e-4 relative at h = 1/128), so distinct values merge neighbours
/// within 1%; the true gaps among the first 15 are all above 5%.
fn distinct(values: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &v in values {
        if out.last().is_none_or(|&l| v - l > 0.01 * v) {
            out.push(v);
        }
    }
    out
}

fn c7_disk(run: &Run) -> Outcome {
    let target = J0_2 * J0_2;
    let fourth = distinct(&run.eigenvalues).get(3).copied().unwrap_or(f64::NAN);
    outcome(
        run.sharp == [1, 2, 4] && rel(fourth, target) < 0.02,
        format!("fourth distinct {fourth:.4} vs j02^2 = {target:.4}, sharp = {:?}", run.sharp),
    )
}

fn polyomino(seed: u64) -> RasterDomain {
    const BLOCKS: usize = 60;
    const CELLS: usize = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = BTreeSet::from([(0i64, 0i64)]);
    while set.len() < BLOCKS {
        let all: Vec<_> = set.iter().copied().collect();
        let (x, y) = all[rng.random_range(0..all.len())];
        let (dx, dy) = [(1, 0), (-1, 0), (0, 1), (0, -1)][rng.random_range(0..4)];
        set.insert((x + dx, y + dy));
    }
    let x0 = set.iter().map(|p| p.0).min().unwrap();
    let y0 = set.iter().map(|p| p.1).min().unwrap();
    let nx = (set.iter().map(|p| p.0).max().unwrap() - x0 + 1) as usize * CELLS + 2;
    let ny = (set.iter().map(|p| p.1).max().unwrap() - y0 + 1) as usize * CELLS + 2;
    let mut mask = vec![false; nx * ny];
    for &(x, y) in &set {
        for i in 0..CELLS {
            for j in 0..CELLS {
                let ci = (x - x0) as usize * CELLS + i + 1;
                let cj = (y - y0) as usize * CELLS + j + 1;
                mask[ci * ny + cj] = true;
            }
        }
    }
    RasterDomain::new(1.0 / CELLS as f64, vec![0.0, 0.0], vec![nx, ny], mask).unwrap()
}

fn c8_courant_suite() -> Outcome {
    let h = 1.0 / 32.0;
    let mut domains = vec![
        ("square", RasterDomain::rasterize(&ConvexBody::rectangle(0.0, 0.0, 1.0, 1.0).unwrap(), h).unwrap()),
        ("disk", RasterDomain::rasterize(&Disk::unit(), h).unwrap()),
        ("rectangle", RasterDomain::rasterize(&ConvexBody::rectangle(0.0, 0.0, 1.0, 2.0).unwrap(), h).unwrap()),
        (
            "L-shape",
            RasterDomain::from_predicate(h, vec![-h, -h], vec![66, 66], |p| {
                let inside = |v: f64| v > 0.0 && v < 2.0;
                inside(p[0]) && inside(p[1]) && !(p[0] > 1.0 && p[1] > 1.0)
            })
            .unwrap(),
        ),
    ];
    for seed in 0..20 {
        domains.push(("polyomino", polyomino(seed)));
    }
    let mut violations = Vec::new();
    let mut pairs = 0;
    for (name, d) in &domains {
        let spectrum = solve_dirichlet_spectrum(d, 30, &SolverOptions::default()).unwrap();
        let scan = courant_sharp_scan(&spectrum, None, &ScanOptions::default()).unwrap();
        pairs += scan.records.len();
        if !scan.courant_violations.is_empty() {
            violations.push(format!("{name}: {:?}", scan.courant_violations));
        }
    }
    outcome(
        violations.is_empty(),
        format!("{} domains, {pairs} eigenpairs, violations: {violations:?}", domains.len()),
    )
}

fn c9_lattice_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut gauss_bad = 0;
    for i in 0..1000 {
        let m = 2 + i % 2;
        let eps = rng.random_range(0.01..5.0);
        let radius: f64 = rng.random_range(0.0..100.0);
        let lambda = (radius * PI / eps).powi(2);
        let exact = gauss_cube_count(m, eps, lambda, GaussMode::Exact).unwrap();
        let lower = gauss_cube_count(m, eps, lambda, GaussMode::LowerBound).unwrap();
        if exact < lower {
            gauss_bad += 1;
        }
    }
    let square = RasterDomain::rasterize(&ConvexBody::rectangle(0.0, 0.0, 1.0, 1.0).unwrap(), 1.0 / 8.0).unwrap();
    let mut bracket_bad = 0;
    for eps in [0.5, 0.25, 0.125] {
        for i in 1..=100 {
            // lambda = t pi^2 with integer t, so the exact count is lattice2(t)
            let t = 5 * i as u64;
            let lower = bracketing_lower_bound(&square, eps, t as f64 * PI * PI).unwrap();
            if lower > lattice2(t) as f64 {
                bracket_bad += 1;
            }
        }
    }
    let c = pleijel_constants(2).unwrap();
    let body = ConvexBody::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
    let spec = ExactSpectrum::Rectangle { width: 1.0, height: 1.0 };
    let mut remainder_bad = 0;
    for i in 1..=100 {
        let t = 5 * i as u64;
        let lambda = t as f64 * PI * PI;
        let r = remainder_upper_bound(&body, &c, lambda, None, Some(&spec)).unwrap();
        let oracle = lambda / (4.0 * PI) - lattice2(t) as f64;
        if r.exact_count != Some(lattice2(t)) || oracle > r.upper_bound {
            remainder_bad += 1;
        }
    }
    outcome(
        gauss_bad + bracket_bad + remainder_bad == 0,
        format!("violations: Gauss {gauss_bad}/1000, bracketing {bracket_bad}/300, remainder {remainder_bad}/100"),
    )
}

fn c10_weyl() -> Outcome {
    let lambda = 1e4 * PI * PI;
    let oracle = lattice2(10_000);
    let n = ExactSpectrum::Rectangle { width: 1.0, height: 1.0 }.counting(lambda).unwrap();
    let ratio = n as f64 / (lambda / (4.0 * PI));
    outcome(
        n == oracle && (0.9..=1.0).contains(&ratio),
        format!("N = {n}, N / (lambda / 4 pi) = {ratio:.5}"),
    )
}

fn c11_dominance(runs: &[(&str, &Run)]) -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, run) in runs {
        for &n in &run.sharp {
            let lambda = run.eigenvalues[n - 1];
            ok &= lambda <= run.report.lambda_star && n as f64 <= run.report.count_star;
        }
        lines.push(format!(
            "{name}: max sharp lambda {:.2} <= {:.3e}, n <= {:.3e}",
            run.sharp.last().map_or(0.0, |&n| run.eigenvalues[n - 1]),
            run.report.lambda_star,
            run.report.count_star
        ));
    }
    outcome(ok && runs.iter().all(|(_, r)| !r.sharp.is_empty()), lines.join("; "))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u8, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took <= l);
        let passed = out.passed && in_time;
        if !passed {
            failed += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(" / limit {:.0?}", l));
        println!(
            "criterion {id:>2} {}  {name}: {} [{:.2?}{budget}]",
            if passed { "PASS" } else { "FAIL" },
            out.detail,
            took
        );
    };
    let s = Duration::from_secs;
    report(1, "snowflake critical width", Some(s(1)), &mut c1_snowflake_width);
    report(2, "snowflake count bound", Some(s(1)), &mut c2_snowflake_count);
    report(3, "convex-route eigenvalue bounds", Some(s(1)), &mut c3_convex_route);
    report(4, "cube fractal uniform bound", Some(s(1)), &mut c4_cube_fractal);
    report(5, "snowflake measure", Some(s(30)), &mut c5_snowflake_measure);

    let h = 1.0 / 128.0;
    let mut square_run = None;
    let mut disk_run = None;
    report(6, "square spectrum and Courant scan", Some(s(60)), &mut || {
        let run = scan(RasterDomain::rasterize(&ConvexBody::rectangle(0.0, 0.0, 1.0, 1.0).unwrap(), h).unwrap());
        let out = c6_square(&run);
        square_run = Some(run);
        out
    });
    report(7, "disk spectrum and Courant scan", Some(s(60)), &mut || {
        let run = scan(RasterDomain::rasterize(&Disk::unit(), h).unwrap());
        let out = c7_disk(&run);
        disk_run = Some(run);
        out
    });
    report(8, "Courant invariant suite", None, &mut c8_courant_suite);
    report(9, "Gauss, bracketing and remainder suite", Some(s(30)), &mut c9_lattice_suite);
    report(10, "Weyl sanity", Some(s(5)), &mut c10_weyl);
    let (square_run, disk_run) = (square_run.unwrap(), disk_run.unwrap());
    report(11, "bound dominance", None, &mut || c11_dominance(&[("square", &square_run), ("disk", &disk_run)]));

    if failed == 0 {
        println!("acceptance: all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
