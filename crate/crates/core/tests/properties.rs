//! Randomised invariants across the public API.

use proptest::prelude::*;
use std::f64::consts::PI;

use courant_core::bounds::{
    bracketing_lower_bound, courant_sharp_count_bound, courant_sharp_lambda_bound, faber_krahn_lower,
    gauss_cube_count, li_yau_lower, remainder_upper_bound, ExactSpectrum, GaussMode,
};
use courant_core::constants::pleijel_constants;
use courant_core::fractals::{cube_fractal_count_bound, cube_fractal_epsilon_lower, cube_fractal_stats, snowflake_count_bound, snowflake_epsilon_lower};
use courant_core::geometry::{lattice_cube_count, BoundaryLayer, ConvexBody, Disk, DistanceField, RasterDomain};

/// Brute-force `#{k in N^m : |k|^2 < r2}` by nested loops over a box.
fn brute_lattice(m: usize, r2: f64) -> u64 {
    let r = r2.sqrt().ceil() as i64 + 1;
    let mut count = 0;
    let mut k = vec![1i64; m];
    loop {
        let s: i64 = k.iter().map(|x| x * x).sum();
        if (s as f64) < r2 {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == m {
                return count;
            }
            k[i] += 1;
            if k[i] <= r {
                break;
            }
            k[i] = 1;
            i += 1;
        }
    }
}

fn unit_square_raster(cells: usize) -> RasterDomain {
    let h = 1.0 / cells as f64;
    RasterDomain::from_predicate(h, vec![-h, -h], vec![cells + 2, cells + 2], |p| p.iter().all(|&x| x > 0.0 && x < 1.0))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gauss_count_dominates_its_lower_estimate(m in 2usize..=3, eps in 0.05f64..3.0, t in 0.0f64..1.0) {
        // lambda chosen so that eps sqrt(lambda) / pi <= 30
        let radius = 30.0 * t;
        let lambda = (radius * PI / eps).powi(2);
        let exact = gauss_cube_count(m, eps, lambda, GaussMode::Exact).unwrap();
        let lower = gauss_cube_count(m, eps, lambda, GaussMode::LowerBound).unwrap();
        prop_assert!(exact >= lower, "{exact} < {lower}");
        if radius < 12.0 {
            prop_assert_eq!(exact as u64, brute_lattice(m, radius * radius));
        }
    }

    #[test]
    fn convex_layer_is_monotone_and_linearly_bounded(
        w in 0.3f64..3.0, hgt in 0.3f64..3.0, e1 in 0.0f64..2.0, e2 in 0.0f64..2.0,
    ) {
        let body = ConvexBody::rectangle(0.0, 0.0, w, hgt).unwrap();
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        prop_assert!(body.layer_measure(lo) <= body.layer_measure(hi) + 1e-12);
        prop_assert!(body.layer_measure(lo) <= body.perimeter() * lo + 1e-12);
        prop_assert!(body.layer_measure(10.0 * (w + hgt)) == body.area());
        prop_assert_eq!(body.layer_measure(0.0), 0.0);
    }

    #[test]
    fn regular_polygon_layer_bounded_by_perimeter(n in 3usize..12, side in 0.2f64..2.0, frac in 0.0f64..1.0) {
        let body = ConvexBody::regular(n, side).unwrap();
        let eps = frac * body.extent();
        prop_assert!(body.layer_measure(eps) <= body.perimeter() * eps + 1e-12);
        prop_assert!(body.layer_measure(eps) <= body.area() + 1e-12);
    }

    #[test]
    fn raster_layer_of_disk_tracks_exact_annulus(r in 0.4f64..1.5, frac in 0.05f64..0.9) {
        let disk = Disk::new([0.0, 0.0], r).unwrap();
        let h = r / 40.0;
        let field = DistanceField::compute(&RasterDomain::rasterize(&disk, h).unwrap());
        let eps = frac * r;
        let err = (field.layer_measure(eps) - disk.layer_measure(eps)).abs();
        // O(h) error proportional to the perimeter
        prop_assert!(err <= 2.0 * h * disk.perimeter(), "err {err}");
    }

    #[test]
    fn theorem_bounds_are_monotone(m in 2usize..=10, v in 0.1f64..10.0, e in 0.01f64..1.0, f in 1.01f64..3.0) {
        let c = pleijel_constants(m).unwrap();
        prop_assert!(courant_sharp_lambda_bound(&c, e).unwrap() > courant_sharp_lambda_bound(&c, e * f).unwrap());
        // very large bounds are refused rather than rounded
        let Ok(a) = courant_sharp_count_bound(&c, v, e) else { return Ok(()) };
        prop_assert!(a.count_star > courant_sharp_count_bound(&c, v, e * f).unwrap().count_star);
        if let Ok(b) = courant_sharp_count_bound(&c, v * f, e) {
            prop_assert!(a.count_star < b.count_star);
        }
        prop_assert!(a.threshold_index as f64 > a.count_star);
        prop_assert!(a.threshold_index as f64 - 1.0 <= a.count_star);
    }

    #[test]
    fn lattice_cube_count_respects_coverage(cells in 8usize..40, r in 0.3f64..1.0, mult in 1usize..4) {
        // disk of radius r on a grid aligned with the origin
        let h = 2.0 * r / cells as f64;
        let disk = Disk::new([0.0, 0.0], r).unwrap();
        let raster = RasterDomain::rasterize(&disk, h).unwrap();
        let eps = mult as f64 * h;
        let count = lattice_cube_count(&raster, eps).unwrap();
        let field = DistanceField::compute(&raster);
        let uncovered = raster.measure() - count.count as f64 * eps * eps;
        prop_assert!(uncovered >= -1e-12);
        prop_assert!(uncovered <= field.layer_measure(2f64.sqrt() * eps) + 1e-12);
    }
}

#[test]
fn bracketing_never_exceeds_square_count() {
    let spec = ExactSpectrum::Rectangle { width: 1.0, height: 1.0 };
    for eps_cells in [2usize, 4, 8] {
        let raster = unit_square_raster(8);
        let eps = 1.0 / eps_cells as f64;
        for i in 1..=100 {
            let lambda = 500.0 * PI * PI * i as f64 / 100.0;
            let lower = bracketing_lower_bound(&raster, eps, lambda).unwrap();
            let exact = spec.counting(lambda).unwrap() as f64;
            assert!(lower <= exact, "eps {eps}, lambda {lambda}: {lower} > {exact}");
        }
    }
    // the spot values: 16 cubes with 0 and 11 modes each
    let raster = unit_square_raster(8);
    assert_eq!(bracketing_lower_bound(&raster, 0.25, 5.0 * PI * PI).unwrap(), 0.0);
    assert_eq!(bracketing_lower_bound(&raster, 0.25, 320.0 * PI * PI).unwrap(), 176.0);
    assert!(spec.counting(320.0 * PI * PI).unwrap() >= 176);
}

#[test]
fn remainder_bound_holds_on_square_grid() {
    let c = pleijel_constants(2).unwrap();
    let square = ConvexBody::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
    let spec = ExactSpectrum::Rectangle { width: 1.0, height: 1.0 };
    for i in 1..=100 {
        let lambda = 500.0 * PI * PI * i as f64 / 100.0;
        let r = remainder_upper_bound(&square, &c, lambda, None, Some(&spec)).unwrap();
        assert!(r.remainder.unwrap() <= r.upper_bound, "lambda {lambda}: {r:?}");
    }
}

#[test]
fn lower_bounds_never_exceed_exact_eigenvalues() {
    let c = pleijel_constants(2).unwrap();
    for (spec, volume) in [
        (ExactSpectrum::Rectangle { width: 1.0, height: 1.0 }, 1.0),
        (ExactSpectrum::Disk { radius: 1.0 }, PI),
    ] {
        let values = spec.lowest(50).unwrap();
        let fk = faber_krahn_lower(&c, volume).unwrap();
        assert!(fk <= values[0] * (1.0 + 1e-12));
        for (n, &lambda) in values.iter().enumerate() {
            assert!(li_yau_lower(2, n as u64 + 1, volume).unwrap() <= lambda, "{spec:?} n = {}", n + 1);
        }
    }
}

#[test]
fn fractal_bounds_agree_with_generic_count() {
    let c2 = pleijel_constants(2).unwrap();
    let snow = snowflake_count_bound().unwrap();
    let generic = courant_sharp_count_bound(&c2, 2.0, snowflake_epsilon_lower()).unwrap();
    assert!((snow.count / generic.count_star - 1.0).abs() < 1e-9);

    let c3 = pleijel_constants(3).unwrap();
    for s in [0.1, 0.2, 1.0 / 3.0, 0.4] {
        let b = cube_fractal_count_bound(s).unwrap();
        let volume = cube_fractal_stats(s).unwrap().measure;
        let generic = courant_sharp_count_bound(&c3, volume, cube_fractal_epsilon_lower(s).unwrap()).unwrap();
        assert!((b.count / generic.count_star - 1.0).abs() < 1e-9, "s = {s}");
        assert!(b.count <= b.uniform);
    }
}
