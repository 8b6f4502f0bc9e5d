use super::raster::Region;
use super::BoundaryLayer;
use crate::{Error, Result};

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    vertices: Vec<[f64; 2]>,
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn shoelace(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    0.5 * (0..n)
        .map(|i| {
            let (p, q) = (points[i], points[(i + 1) % n]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum::<f64>()
}

impl ConvexBody {
    /// Accepts either orientation; the stored order is counterclockwise.
    pub fn new(mut vertices: Vec<[f64; 2]>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidDomain("a polygon needs at least 3 vertices".into()));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidDomain("polygon vertices must be finite".into()));
        }
        if shoelace(&vertices) < 0.0 {
            vertices.reverse();
        }
        let n = vertices.len();
        let scale = vertices
            .iter()
            .flat_map(|v| v.iter().map(|c| c.abs()))
            .fold(1e-300_f64, f64::max);
        for i in 0..n {
            let c = cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if c <= 1e-12 * scale * scale {
                return Err(Error::InvalidDomain(format!(
                    "polygon is not strictly convex at vertex {}",
                    (i + 1) % n
                )));
            }
        }
        // a star-shaped winding (turning number > 1) also has positive turns
        let turning: f64 = (0..n)
            .map(|i| {
                let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
                let (u, v) = ([b[0] - a[0], b[1] - a[1]], [c[0] - b[0], c[1] - b[1]]);
                (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1])
            })
            .sum();
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::InvalidDomain("polygon winds more than once".into()));
        }
        Ok(Self { vertices })
    }

    /// Axis-aligned rectangle `[x0, x0 + w] x [y0, y0 + h]`.
    pub fn rectangle(x0: f64, y0: f64, w: f64, h: f64) -> Result<Self> {
        Self::new(vec![[x0, y0], [x0 + w, y0], [x0 + w, y0 + h], [x0, y0 + h]])
    }

    pub fn regular(n: usize, side: f64) -> Result<Self> {
        let r = side / (2.0 * (std::f64::consts::PI / n as f64).sin());
        Self::new(
            (0..n)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / n as f64;
                    [r * t.cos(), r * t.sin()]
                })
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    /// Hausdorff 1-measure of the boundary.
    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
                (q[0] - p[0]).hypot(q[1] - p[1])
            })
            .sum()
    }

    /// `(width, height)` if the polygon is an axis-aligned rectangle.
    pub fn axis_rectangle(&self) -> Option<(f64, f64)> {
        if self.vertices.len() != 4 {
            return None;
        }
        let (lo, hi) = self.bounding_box();
        let tol = 1e-12 * (hi[0] - lo[0] + hi[1] - lo[1]);
        let on_corner = self.vertices.iter().all(|v| {
            ((v[0] - lo[0]).abs() < tol || (v[0] - hi[0]).abs() < tol)
                && ((v[1] - lo[1]).abs() < tol || (v[1] - hi[1]).abs() < tol)
        });
        on_corner.then(|| (hi[0] - lo[0], hi[1] - lo[1]))
    }

    /// Area of the inner parallel body `{x : d(x, boundary) >= eps}`, the
    /// intersection of every edge half-plane moved inward by `eps`.
    pub fn inner_parallel_area(&self, eps: f64) -> f64 {
        let n = self.vertices.len();
        let mut poly = self.vertices.clone();
        for i in 0..n {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let len = (q[0] - p[0]).hypot(q[1] - p[1]);
            // inward unit normal of a counterclockwise edge
            let normal = [-(q[1] - p[1]) / len, (q[0] - p[0]) / len];
            let offset = normal[0] * p[0] + normal[1] * p[1] + eps;
            let side = |v: [f64; 2]| normal[0] * v[0] + normal[1] * v[1] - offset;
            let mut clipped = Vec::with_capacity(poly.len() + 1);
            for k in 0..poly.len() {
                let (a, b) = (poly[k], poly[(k + 1) % poly.len()]);
                let (sa, sb) = (side(a), side(b));
                if sa >= 0.0 {
                    clipped.push(a);
                }
                if (sa >= 0.0) != (sb >= 0.0) {
                    let t = sa / (sa - sb);
                    clipped.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
                }
            }
            if clipped.len() < 3 {
                return 0.0;
            }
            poly = clipped;
        }
        shoelace(&poly).max(0.0)
    }
}

impl Region for ConvexBody {
    fn dim(&self) -> usize {
        2
    }

    fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; 2];
        let mut hi = vec![f64::NEG_INFINITY; 2];
        for v in &self.vertices {
            for k in 0..2 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    fn contains(&self, p: &[f64]) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], [p[0], p[1]]) > 0.0)
    }
}

impl BoundaryLayer for ConvexBody {
    fn dim(&self) -> usize {
        2
    }

    fn measure(&self) -> f64 {
        self.area()
    }

    fn layer_measure(&self, eps: f64) -> f64 {
        (self.area() - self.inner_parallel_area(eps)).clamp(0.0, self.area())
    }

    fn extent(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi[0] - lo[0]).hypot(hi[1] - lo[1])
    }
}
