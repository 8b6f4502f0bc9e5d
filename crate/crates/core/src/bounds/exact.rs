//! Closed-form Dirichlet spectra used as oracles: axis-aligned rectangles
//! and disks.

use std::f64::consts::PI;

use super::lattice_count::lattice_points_below;
use crate::constants::bessel_zero;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExactSpectrum {
    /// Eigenvalues `pi^2 (p^2/w^2 + q^2/h^2)`, `p, q >= 1`.
    Rectangle { width: f64, height: f64 },
    /// Eigenvalues `j_{p,s}^2 / r^2`, multiplicity two for `p >= 1`.
    Disk { radius: f64 },
}

impl ExactSpectrum {
    /// `N(lambda) = #{n : lambda_n < lambda}`.
    pub fn counting(&self, lambda: f64) -> Result<u64> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::invalid("lambda", format!("must be finite and >= 0, got {lambda}")));
        }
        match *self {
            ExactSpectrum::Rectangle { width, height } if width == height => {
                Ok(lattice_points_below(2, lambda * width * width / (PI * PI)))
            }
            ExactSpectrum::Rectangle { width, height } => {
                let scaled = lambda / (PI * PI);
                let mut count = 0;
                let mut p = 1u64;
                loop {
                    let rest = scaled - (p * p) as f64 / (width * width);
                    let bound = rest * height * height;
                    if !(bound > 1.0) {
                        break;
                    }
                    count += lattice_points_below(1, bound);
                    p += 1;
                }
                Ok(count)
            }
            ExactSpectrum::Disk { radius } => {
                let cut = lambda.sqrt() * radius;
                let mut count = 0;
                for order in 0.. {
                    let mut found = 0;
                    for index in 1.. {
                        if bessel_zero(order as f64, index)?.value >= cut {
                            break;
                        }
                        found += 1;
                    }
                    if found == 0 {
                        break;
                    }
                    count += if order == 0 { found } else { 2 * found };
                }
                Ok(count)
            }
        }
    }

    /// The `n` smallest eigenvalues, with multiplicity, ascending.
    pub fn lowest(&self, n: usize) -> Result<Vec<f64>> {
        let mut cut = match *self {
            ExactSpectrum::Rectangle { width, height } => {
                4.0 * PI * (n as f64 + 4.0) / (width * height) + PI * PI * (1.0 / (width * width) + 1.0 / (height * height))
            }
            ExactSpectrum::Disk { radius } => 4.0 * (n as f64 + 4.0) / (radius * radius) + 30.0 / (radius * radius),
        };
        loop {
            let values = self.below(cut)?;
            if values.len() >= n {
                return Ok(values[..n].to_vec());
            }
            cut *= 2.0;
        }
    }

    fn below(&self, cut: f64) -> Result<Vec<f64>> {
        let mut values = Vec::new();
        match *self {
            ExactSpectrum::Rectangle { width, height } => {
                for p in 1.. {
                    let base = PI * PI * (p * p) as f64 / (width * width);
                    if base + PI * PI / (height * height) >= cut {
                        break;
                    }
                    for q in 1.. {
                        let v = base + PI * PI * (q * q) as f64 / (height * height);
                        if v >= cut {
                            break;
                        }
                        values.push(v);
                    }
                }
            }
            ExactSpectrum::Disk { radius } => {
                let zcut = cut.sqrt() * radius;
                for order in 0.. {
                    let mut any = false;
                    for index in 1.. {
                        let z = bessel_zero(order as f64, index)?.value;
                        if z >= zcut {
                            break;
                        }
                        any = true;
                        let v = z * z / (radius * radius);
                        values.push(v);
                        if order > 0 {
                            values.push(v);
                        }
                    }
                    if !any {
                        break;
                    }
                }
            }
        }
        values.sort_by(f64::total_cmp);
        Ok(values)
    }
}
