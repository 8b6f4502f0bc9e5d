//! Upper bounds on Courant-sharp Dirichlet eigenvalues for open sets of
//! finite measure, together with a small finite-difference eigensolver and
//! nodal-domain counter used to check those bounds on concrete domains.
//!
//! The crate is organised bottom-up:
//!
//! * [`constants`]: unit-ball volumes, Bessel zeros and the Pleijel constant.
//! * [`geometry`]: rasters, convex polygons, disks, boundary distance fields,
//!   the inner boundary-layer measure and the critical width.
//! * [`fractals`]: the square snowflake and the cube fractal, with their
//!   closed-form boundary-layer estimates.
//! * [`bounds`]: Weyl, Faber-Krahn, Li-Yau, lattice counts, bracketing and
//!   the Courant-sharp bounds themselves.
//! * [`spectral`]: discrete Dirichlet spectra, nodal domains and Courant scans.
//! * [`domain`] and [`io`]: the domain model shared by the CLI and file formats.

// `!(x > 0.0)` is used on purpose so that NaN is rejected with the bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod constants;
pub mod domain;
pub mod error;
pub mod fractals;
pub mod geometry;
pub mod golden;
pub mod io;
pub mod spectral;

pub use error::{Error, Result};
