use std::f64::consts::PI;

use super::raster::Region;
use super::BoundaryLayer;
use crate::{Error, Result};

/// Open disk in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: [f64; 2],
    pub radius: f64,
}

impl Disk {
    pub fn new(center: [f64; 2], radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidDomain(format!("bad disk: center {center:?}, radius {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn unit() -> Self {
        Self { center: [0.0, 0.0], radius: 1.0 }
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    pub fn perimeter(&self) -> f64 {
        2.0 * PI * self.radius
    }
}

impl Region for Disk {
    fn dim(&self) -> usize {
        2
    }

    fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let [x, y] = self.center;
        let r = self.radius;
        (vec![x - r, y - r], vec![x + r, y + r])
    }

    fn contains(&self, p: &[f64]) -> bool {
        (p[0] - self.center[0]).hypot(p[1] - self.center[1]) < self.radius
    }
}

impl BoundaryLayer for Disk {
    fn dim(&self) -> usize {
        2
    }

    fn measure(&self) -> f64 {
        self.area()
    }

    /// Annulus `pi (r^2 - (r - eps)_+^2)`.
    fn layer_measure(&self, eps: f64) -> f64 {
        let inner = (self.radius - eps).max(0.0);
        PI * (self.radius * self.radius - inner * inner)
    }

    fn extent(&self) -> f64 {
        2.0 * std::f64::consts::SQRT_2 * self.radius
    }
}
