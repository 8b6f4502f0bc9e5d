//! Dimension-dependent constants: the unit-ball volume `omega_m`, the first
//! Dirichlet eigenvalue of the unit ball, and the Pleijel constant
//! `gamma_m = (2 pi)^m omega_m^-2 lambda_1(B_m)^(-m/2)`.

mod bessel;

pub use bessel::{bessel_j, bessel_j_prime, bessel_zero, mcmahon_seed, BesselZero};

use serde::Serialize;
use std::f64::consts::PI;

use crate::{Error, Result};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 10;

/// Volume of the unit ball in `R^m`, `pi^(m/2) / Gamma(m/2 + 1)`.
pub fn unit_ball_volume(m: usize) -> f64 {
    // omega_0 = 1, omega_1 = 2, omega_m = (2 pi / m) omega_{m-2}
    let mut omega = if m.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if m.is_multiple_of(2) { 2 } else { 3 };
    while k <= m {
        omega *= 2.0 * PI / k as f64;
        k += 2;
    }
    omega
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PleijelConstants {
    pub m: usize,
    pub omega_m: f64,
    pub lambda1_ball: f64,
    pub gamma_m: f64,
}

impl PleijelConstants {
    pub fn new(m: usize) -> Result<Self> {
        if !(MIN_DIM..=MAX_DIM).contains(&m) {
            return Err(Error::UnsupportedDimension { m, supported: "2..=10" });
        }
        let omega_m = unit_ball_volume(m);
        let j = bessel_zero(0.5 * m as f64 - 1.0, 1)?.value;
        let lambda1_ball = j * j;
        let gamma_m =
            (2.0 * PI).powi(m as i32) / (omega_m * omega_m) / lambda1_ball.powf(0.5 * m as f64);
        Ok(Self { m, omega_m, lambda1_ball, gamma_m })
    }

    pub fn one_minus_gamma(&self) -> f64 {
        1.0 - self.gamma_m
    }

    /// Weyl constant `omega_m / (2 pi)^m`.
    pub fn weyl_constant(&self) -> f64 {
        self.omega_m / (2.0 * PI).powi(self.m as i32)
    }
}

/// Constants for dimension `m`; errors outside `2..=10`.
pub fn pleijel_constants(m: usize) -> Result<PleijelConstants> {
    PleijelConstants::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn planar_constants() {
        let c = pleijel_constants(2).unwrap();
        assert!((c.lambda1_ball - 5.783_185_962_946_784).abs() < 1e-11);
        assert!((c.gamma_m - 4.0 / c.lambda1_ball).abs() < 1e-15);
        assert!((c.gamma_m - 0.691_660).abs() < 1e-6);
    }

    #[test]
    fn spatial_constants_match_closed_form() {
        let c = pleijel_constants(3).unwrap();
        assert!((c.lambda1_ball - PI * PI).abs() < 1e-11);
        let closed = 9.0 / (2.0 * PI * PI);
        assert!((c.gamma_m - closed).abs() < 1e-12);
        assert!((c.one_minus_gamma() - (1.0 - closed)).abs() < 1e-12);
    }

    #[test]
    fn rejects_line_and_high_dimensions() {
        assert!(matches!(pleijel_constants(1), Err(Error::UnsupportedDimension { m: 1, .. })));
        assert!(pleijel_constants(11).is_err());
        assert!(pleijel_constants(0).is_err());
    }
}
