//! Floating-point spherical geometry: unit vectors, minor great-circle
//! arcs, the crossing predicate, and the two projections used as
//! independent oracles.
//!
//! Everything here is a pure function of its inputs; all operations are
//! safe to call concurrently.

mod arc;
mod project;
mod vector;

pub use arc::{arc_contains, arcs_cross, classify_arcs_cross, make_arc, Crossing, GeodesicArc};
pub use project::{gnomonic_project, stereographic_project, tangent_basis};
pub use vector::{great_circle_distance, PlanarPoint, Rotation, UnitVector, Vec3};

use thiserror::Error;

/// Degenerate or out-of-domain geometric configurations.
///
/// All of these occur with probability zero under the uniform sphere model;
/// callers either resample, retry with a different pole, or count the event
/// in a degeneracy statistic — never silently misclassify.
#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum GeomError {
    #[error("coordinates are not on the unit sphere (|norm² - 1| = {norm_sq_error:.3e})")]
    NotUnit { norm_sq_error: f64 },

    #[error("arc endpoints coincide or are antipodal (separation {separation:.3e} rad)")]
    DegenerateArc { separation: f64 },

    #[error("great circles coincide within tolerance (|n1 × n2| = {cross_norm:.3e})")]
    CoincidentGreatCircles { cross_norm: f64 },

    #[error("point is outside the open hemisphere of the projection pole (cos = {cos_angle:.3e})")]
    OutsideHemisphere { cos_angle: f64 },

    #[error("point coincides with the stereographic pole (cos = {cos_angle})")]
    AtPole { cos_angle: f64 },

    #[error("projection pole too close to a drawing vertex or edge (clearance {clearance:.3e} rad)")]
    PoleConflict { clearance: f64 },
}
