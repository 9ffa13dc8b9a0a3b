//! Random geodesic drawings on the unit sphere and their crossing
//! statistics.
//!
//! The model: sample `n` points uniformly on the sphere, join every pair
//! within spherical distance `d` by its minor great-circle arc, and count
//! edge crossings exactly. As `d` shrinks the normalized count `cr·n²/e³`
//! approaches `8/(9π²) < 0.0900633`, and every step of that story is
//! checked three ways here — closed form, independent quadrature, and
//! Monte Carlo simulation — with stereographic and gnomonic projections as
//! planar oracles for the spherical crossing predicate.
//!
//! Module map:
//!
//! - [`geom`]: unit vectors, minor arcs, the banded crossing predicate,
//!   gnomonic and stereographic projections.
//! - [`sampling`]: seedable deterministic streams, uniform sphere sampling,
//!   the arc-length distribution test.
//! - [`drawing`]: threshold drawings, exact (parallel) crossing counts,
//!   planar arc images and the disjoint-copies construction.
//! - [`analytic`]: the closed-form expectations, quadrature oracles, the
//!   ratio function `g(d)` and its `8/(9π²)` limit.
//! - [`montecarlo`]: reproducible multi-trial experiments with exact
//!   finite-n analytic targets.

pub mod analytic;
pub mod drawing;
pub mod geom;
pub mod montecarlo;
pub mod sampling;
pub mod tolerances;
