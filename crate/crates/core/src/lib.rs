//! Local singularity invariants of model plurisubharmonic functions.
//!
//! The crate computes directional Lelong numbers, indicators and residual
//! Monge-Ampère masses of functions such as `log|F|` exactly, through the
//! Newton polyhedron of `F`, and numerically, through scaling limits of the
//! circled images of the function on the unit polydisk.
//!
//! Module map:
//! - [`poly`]: exact sparse polynomials, parsing, recentering, evaluation.
//! - [`psh`]: evaluable model functions, circled images, convex images.
//! - [`convex`]: piecewise-linear convex functions on the negative orthant.
//! - [`diagram`]: indicator diagrams, indices, covolume and residual mass.
//! - [`estimate`]: numerical scaling-limit estimates with monotone brackets.
//! - [`green1d`]: weighted Green functions of the unit disk and related checks.

pub mod convex;
pub mod diagram;
pub mod error;
pub mod estimate;
pub mod exact;
pub mod green1d;
pub mod poly;
pub mod psh;
pub mod quadrature;

pub use error::{Error, Result};
