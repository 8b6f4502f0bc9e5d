//! Bessel functions of the first kind of real order and their positive zeros.
//!
//! `J_nu(x)` is evaluated from the ascending series for small arguments and by
//! Miller's backward recurrence, normalised with the Neumann sum
//! `(x/2)^nu = sum_k (nu + 2k) Gamma(nu + k) / k! J_{nu+2k}(x)`, elsewhere.
//! Zeros are found by Newton iteration from McMahon's expansion, with a
//! bracketing fallback when the seed lands on the wrong zero.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::{Error, Result};

/// Below this argument the ascending series loses at most a few ulps.
const SERIES_LIMIT: f64 = 8.0;
const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 50;

/// The `index`-th positive zero of `J_order`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesselZero {
    pub order: f64,
    pub index: usize,
    pub value: f64,
}

/// `J_order(x)` for `order >= 0` and `x >= 0`.
pub fn bessel_j(order: f64, x: f64) -> f64 {
    debug_assert!(order >= 0.0 && x >= 0.0);
    if x == 0.0 {
        return if order == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_LIMIT {
        series(order, x)
    } else {
        miller(order, x)
    }
}

/// `d/dx J_order(x)` via `J'_nu = (nu/x) J_nu - J_{nu+1}`.
pub fn bessel_j_prime(order: f64, x: f64) -> f64 {
    if x == 0.0 {
        return match order {
            1.0 => 0.5,
            o if o == 0.0 || o > 1.0 => 0.0,
            _ => f64::INFINITY,
        };
    }
    order / x * bessel_j(order, x) - bessel_j(order + 1.0, x)
}

/// `(x/2)^nu / Gamma(nu + 1)`, computed in log space.
fn leading_factor(order: f64, x: f64) -> f64 {
    if order == 0.0 {
        return 1.0;
    }
    (order * (0.5 * x).ln() - ln_gamma(order + 1.0)).exp()
}

fn series(order: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (order + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k > 0.5 * x {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    sum * leading_factor(order, x)
}

fn miller(order: f64, x: f64) -> f64 {
    let mut start = (x + 20.0 + (60.0 * x).sqrt()) as usize;
    start += start % 2;
    let half = start / 2;

    // weights w_k / Gamma(nu + 1): w_0 = 1, w_k = (nu + 2k) g_k with
    // g_1 = 1, g_{k+1} = g_k (nu + k) / (k + 1)
    let mut weights = Vec::with_capacity(half + 1);
    weights.push(1.0);
    let mut g = 1.0;
    for k in 1..=half {
        if k > 1 {
            let kf = (k - 1) as f64;
            g *= (order + kf) / (kf + 1.0);
        }
        weights.push((order + 2.0 * k as f64) * g);
    }

    let mut above = 0.0; // f_{j+1}
    let mut current = 1e-30; // f_j
    let mut norm = if start.is_multiple_of(2) { weights[half] * current } else { 0.0 };
    for j in (1..=start).rev() {
        let below = 2.0 * (order + j as f64) / x * current - above;
        above = current;
        current = below;
        let idx = j - 1;
        if idx % 2 == 0 {
            norm += weights[idx / 2] * current;
        }
        if current.abs() > 1e250 {
            current *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
        }
    }
    current / norm * leading_factor(order, x)
}

/// McMahon's large-zero expansion of `j_{order,index}`.
pub fn mcmahon_seed(order: f64, index: usize) -> f64 {
    let mu = 4.0 * order * order;
    let beta = (index as f64 + 0.5 * order - 0.25) * std::f64::consts::PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

fn newton(order: f64, seed: f64) -> Option<f64> {
    let mut x = seed;
    for _ in 0..NEWTON_MAX_ITER {
        if !(x > 0.0) || !x.is_finite() {
            return None;
        }
        let step = bessel_j(order, x) / bessel_j_prime(order, x);
        x -= step;
        if step.abs() <= NEWTON_TOL {
            return Some(x);
        }
    }
    None
}

/// Number of sign changes of `J_order` on `(0, upper)`.
fn zeros_below(order: f64, upper: f64) -> usize {
    const STEP: f64 = 0.1;
    let mut count = 0;
    let mut x = STEP;
    let mut prev = bessel_j(order, x);
    while x + STEP < upper {
        x += STEP;
        let v = bessel_j(order, x);
        if v == 0.0 || v.signum() != prev.signum() {
            count += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    count
}

fn bracketed(order: f64, index: usize) -> Option<f64> {
    const STEP: f64 = 0.05;
    let mut seen = 0;
    let mut a = STEP;
    let mut fa = bessel_j(order, a);
    let limit = order + 4.0 * (index as f64 + 2.0) * std::f64::consts::PI;
    while a < limit {
        let b = a + STEP;
        let fb = bessel_j(order, b);
        if fa.signum() != fb.signum() {
            seen += 1;
            if seen == index {
                let (mut lo, mut hi) = (a, b);
                while hi - lo > 1e-6 {
                    let mid = 0.5 * (lo + hi);
                    if bessel_j(order, mid).signum() == fa.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return newton(order, 0.5 * (lo + hi));
            }
        }
        a = b;
        fa = fb;
    }
    None
}

/// The `index`-th positive zero of `J_order`, accurate to about `1e-12`.
pub fn bessel_zero(order: f64, index: usize) -> Result<BesselZero> {
    if !(order >= 0.0) || !order.is_finite() {
        return Err(Error::invalid("order", format!("must be finite and >= 0, got {order}")));
    }
    if index == 0 {
        return Err(Error::invalid("index", "zero indices start at 1"));
    }
    let from_seed = newton(order, mcmahon_seed(order, index))
        .filter(|&z| z > order && zeros_below(order, z - 0.5) == index - 1);
    let value = from_seed.or_else(|| bracketed(order, index)).ok_or_else(|| {
        Error::NumericFailure {
            what: "bessel_zero",
            detail: format!("no convergence for order {order}, index {index}"),
        }
    })?;
    Ok(BesselZero { order, index, value })
}
