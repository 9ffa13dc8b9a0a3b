//! Tolerance bands shared by the geometric predicates and the projection
//! oracles.
//!
//! Every band exists for one reason: configurations that occur with
//! probability zero under the uniform sphere model (antipodal endpoints,
//! coincident great circles, a crossing landing exactly on an arc endpoint)
//! still show up in floating point as near-zero signed quantities. The
//! predicates classify anything inside a band as degenerate and surface it
//! through an error or a counter instead of guessing a sign.

/// Maximum allowed deviation of `x² + y² + z² ` from 1 for a [`crate::geom::UnitVector`].
///
/// Normalizing any reasonable vector lands within a few ulps of 1; 1e-12
/// leaves room for short chains of rotations without re-normalization.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Minimum angular separation (radians) between arc endpoints, and minimum
/// distance from π, for a constructible minor arc.
///
/// Closer pairs are declared degenerate and left to the caller to resample;
/// under uniform sampling they occur with probability ~`1e-18` per pair.
pub const MIN_ARC_SEPARATION: f64 = 1e-9;

/// Two great circles are treated as coincident when `|n₁ × n₂| < 1e-10`.
pub const COINCIDENT_CIRCLE_TOL: f64 = 1e-10;

/// Strict-interiority margin for the crossing predicate's four sign tests.
///
/// A candidate intersection point counts as a crossing only when every
/// signed membership test clears this margin; values inside `±` this band
/// are classified ambiguous and reported through degeneracy counters, so a
/// tangential touch within rounding never silently flips a count.
pub const STRICT_CROSS_MARGIN: f64 = 1e-12;

/// Squared chord distance below which two arc endpoints are "the same
/// point" for the adjacency convention (chord `1e-12`).
pub const SHARED_ENDPOINT_SQ_CHORD: f64 = 1e-24;

/// Membership band for `arc_contains`: the point may undershoot the arc's
/// endpoints by this much in the signed tests and still count as on-arc.
pub const ARC_CONTAINS_SLACK: f64 = 1e-12;

/// Hemisphere margin for the gnomonic projection: `p · pole` must exceed
/// this, keeping the `1 / (p · pole)` scale factor below ~1e6.
pub const GNOMONIC_MIN_COS: f64 = 1e-6;

/// A point is "at the pole" for stereographic projection when
/// `p · pole ≥ 1 - 1e-9`.
pub const STEREOGRAPHIC_POLE_TOL: f64 = 1e-9;

/// Minimum angular clearance (radians) between the projection pole and any
/// vertex or edge arc of a drawing being projected. Conflicts trigger a
/// retry with a different pole rather than a badly conditioned projection.
pub const POLE_CLEARANCE: f64 = 1e-6;

/// An edge's great circle is treated as passing through the projection
/// pole (image = straight line) when `|pole · normal| < 1e-12`.
pub const STRAIGHT_IMAGE_TOL: f64 = 1e-12;

/// Slack (on the cosine scale) for the bounding-cap prefilter in crossing
/// counting. The prefilter may only ever reject pairs whose caps are
/// disjoint by more than this, so it can never drop a true crossing.
pub const CAP_PREFILTER_SLACK: f64 = 1e-9;

/// Planar circle–circle / circle–line intersections closer than this
/// (relative to the configuration scale) to tangency are counted in the
/// tangency statistic instead of being classified as crossings.
pub const PLANAR_TANGENCY_BAND: f64 = 1e-10;

/// Strict-interiority margin, in angle along a circular arc (radians) or in
/// normalized segment parameter, for planar crossing membership.
pub const PLANAR_INTERIOR_MARGIN: f64 = 1e-9;

/// Planar edge descriptors must pass through their endpoint images to
/// within this Euclidean distance.
pub const PLANAR_ENDPOINT_FIT: f64 = 1e-9;

// The strict predicate margin must sit well inside the degeneracy bands.
const _: () = {
    assert!(STRICT_CROSS_MARGIN < COINCIDENT_CIRCLE_TOL);
    assert!(COINCIDENT_CIRCLE_TOL < MIN_ARC_SEPARATION);
    assert!(MIN_ARC_SEPARATION < GNOMONIC_MIN_COS);
    assert!(STRAIGHT_IMAGE_TOL < PLANAR_TANGENCY_BAND);
    assert!(PLANAR_TANGENCY_BAND < PLANAR_INTERIOR_MARGIN);
};
