//! The domains the library can bound and discretise.

use crate::bounds::ExactSpectrum;
use crate::constants::PleijelConstants;
use crate::fractals::{
    build_cube_fractal, build_snowflake, cube_fractal_epsilon_lower, cube_fractal_stats, snowflake_epsilon_lower,
    SNOWFLAKE_MEASURE,
};
use crate::geometry::{BoundaryLayer, ConvexBody, Disk, DistanceField, RasterDomain};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub enum Domain {
    Raster(RasterDomain),
    Polygon(ConvexBody),
    Disk(Disk),
    /// The square snowflake; `generations` only matters for rasterisation.
    Snowflake { generations: u32 },
    /// The cube fractal `D_s`; `generations` only matters for rasterisation.
    CubeFractal { s: f64, generations: u32 },
}

/// A lower bound for the critical width together with where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthBound {
    pub value: f64,
    pub source: &'static str,
}

impl Domain {
    pub fn kind(&self) -> &'static str {
        match self {
            Domain::Raster(_) => "raster",
            Domain::Polygon(_) => "polygon",
            Domain::Disk(_) => "disk",
            Domain::Snowflake { .. } => "square_fractal",
            Domain::CubeFractal { .. } => "cube_fractal",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Raster(r) => r.dim(),
            Domain::Polygon(_) | Domain::Disk(_) | Domain::Snowflake { .. } => 2,
            Domain::CubeFractal { .. } => 3,
        }
    }

    /// Lebesgue measure; for the fractals this is the measure of the limit set.
    pub fn volume(&self) -> Result<f64> {
        Ok(match self {
            Domain::Raster(r) => r.measure(),
            Domain::Polygon(p) => p.area(),
            Domain::Disk(d) => d.area(),
            Domain::Snowflake { .. } => SNOWFLAKE_MEASURE,
            Domain::CubeFractal { s, .. } => cube_fractal_stats(*s)?.measure,
        })
    }

    /// A raster at spacing `h`. Raster domains are returned as they are and
    /// reject an `h` that differs from their own.
    pub fn to_raster(&self, h: Option<f64>) -> Result<RasterDomain> {
        let need_h = || h.ok_or_else(|| Error::invalid("h", format!("a {} domain needs a grid spacing", self.kind())));
        match self {
            Domain::Raster(r) => match h {
                Some(h) if (h - r.h()).abs() > 1e-12 * r.h() => {
                    Err(Error::invalid("h", format!("raster has fixed spacing {}, got {h}", r.h())))
                }
                _ => Ok(r.clone()),
            },
            Domain::Polygon(p) => RasterDomain::rasterize(p, need_h()?),
            Domain::Disk(d) => RasterDomain::rasterize(d, need_h()?),
            Domain::Snowflake { generations } => {
                let spec = build_snowflake(*generations)?;
                let refine = spec.refine_for(need_h()?)?;
                spec.rasterize(refine)
            }
            Domain::CubeFractal { s, generations } => build_cube_fractal(*s, *generations)?.rasterize(need_h()?),
        }
    }

    /// The boundary layer measured directly from the geometry, when there is one.
    pub fn boundary_layer(&self) -> Option<Box<dyn BoundaryLayer>> {
        match self {
            Domain::Raster(r) => Some(Box::new(DistanceField::compute(r))),
            Domain::Polygon(p) => Some(Box::new(p.clone())),
            Domain::Disk(d) => Some(Box::new(*d)),
            Domain::Snowflake { .. } | Domain::CubeFractal { .. } => None,
        }
    }

    /// Closed-form lower bound for the critical width, if one is known.
    pub fn analytic_width(&self, constants: &PleijelConstants) -> Result<Option<WidthBound>> {
        let convex = |area: f64, perimeter: f64| WidthBound {
            value: 0.5 * constants.one_minus_gamma() * area / perimeter,
            source: "analytic convex bound mu(eps) <= perimeter * eps",
        };
        Ok(match self {
            Domain::Raster(_) => None,
            Domain::Polygon(p) => Some(convex(p.area(), p.perimeter())),
            Domain::Disk(d) => Some(convex(d.area(), d.perimeter())),
            Domain::Snowflake { .. } => Some(WidthBound {
                value: snowflake_epsilon_lower(),
                source: "analytic snowflake bound from generation edge sums",
            }),
            Domain::CubeFractal { s, .. } => Some(WidthBound {
                value: cube_fractal_epsilon_lower(*s)?,
                source: "analytic cube-fractal bound from face sums",
            }),
        })
    }

    /// Closed-form Dirichlet spectrum for axis-aligned rectangles and disks.
    pub fn exact_spectrum(&self) -> Option<ExactSpectrum> {
        match self {
            Domain::Polygon(p) => p.axis_rectangle().map(|(width, height)| ExactSpectrum::Rectangle { width, height }),
            Domain::Disk(d) => Some(ExactSpectrum::Disk { radius: d.radius }),
            _ => None,
        }
    }
}
