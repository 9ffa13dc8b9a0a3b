//! Minor great-circle arcs and the arc crossing predicate.
//!
//! Two distinct great circles meet in an antipodal point pair `{t, -t}` with
//! `t ∥ n₁ × n₂`. Two minor arcs cross exactly when one of those two points
//! is strictly interior to both arcs — a minor arc is shorter than a
//! semicircle, so it can never contain both. All sign tests run against the
//! bands in [`crate::tolerances`]; anything inside a band is reported as
//! degenerate rather than silently resolved.

use super::vector::{great_circle_distance, UnitVector};
use super::GeomError;
use crate::tolerances::{
    ARC_CONTAINS_SLACK, COINCIDENT_CIRCLE_TOL, MIN_ARC_SEPARATION, SHARED_ENDPOINT_SQ_CHORD,
    STRICT_CROSS_MARGIN,
};

/// The minor great-circle arc between two distinct, non-antipodal points.
#[derive(Clone, Copy, Debug)]
pub struct GeodesicArc {
    a: UnitVector,
    b: UnitVector,
    /// Unit normal of the arc's great circle, `a × b` normalized.
    normal: UnitVector,
    /// Arc length in radians, strictly inside `(0, π)`.
    length: f64,
}

impl GeodesicArc {
    pub fn a(&self) -> UnitVector {
        self.a
    }

    pub fn b(&self) -> UnitVector {
        self.b
    }

    pub fn normal(&self) -> UnitVector {
        self.normal
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Point halfway along the arc. Well-defined because the endpoints are
    /// never antipodal.
    pub fn midpoint(&self) -> UnitVector {
        (self.a.as_vec3() + self.b.as_vec3())
            .normalized()
            .expect("non-antipodal endpoints")
    }

    /// Membership on the minor arc, for points already on the arc's great
    /// circle (caller guarantees `|p·normal| ≤ 1e-9`).
    ///
    /// Inclusive of endpoints up to the `1e-12` slack band.
    pub fn contains(&self, p: UnitVector) -> bool {
        let from_a = self.a.cross(p).dot(self.normal.as_vec3());
        let to_b = p.cross(self.b).dot(self.normal.as_vec3());
        from_a >= -ARC_CONTAINS_SLACK && to_b >= -ARC_CONTAINS_SLACK
    }

    /// Smallest of the two signed membership quantities; positive strictly
    /// inside the arc, negative outside, near zero at the endpoints.
    fn interior_margin(&self, p: UnitVector) -> f64 {
        let from_a = self.a.cross(p).dot(self.normal.as_vec3());
        let to_b = p.cross(self.b).dot(self.normal.as_vec3());
        from_a.min(to_b)
    }
}

/// Construct the minor arc from `p` to `q`.
///
/// Fails with [`GeomError::DegenerateArc`] when the endpoints coincide or
/// are antipodal within `1e-9` — a measure-zero sample the caller resamples
/// or rejects.
pub fn make_arc(p: UnitVector, q: UnitVector) -> Result<GeodesicArc, GeomError> {
    let length = great_circle_distance(p, q);
    if !(MIN_ARC_SEPARATION..=std::f64::consts::PI - MIN_ARC_SEPARATION).contains(&length) {
        return Err(GeomError::DegenerateArc { separation: length });
    }
    let normal = p
        .cross(q)
        .normalized()
        .ok_or(GeomError::DegenerateArc { separation: length })?;
    Ok(GeodesicArc {
        a: p,
        b: q,
        normal,
        length,
    })
}

/// Membership test as a free function, mirroring [`GeodesicArc::contains`].
pub fn arc_contains(arc: &GeodesicArc, p: UnitVector) -> bool {
    arc.contains(p)
}

/// Outcome of the banded crossing classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crossing {
    /// A great-circle intersection point is strictly interior to both arcs.
    Proper,
    /// Every candidate clears the band on the outside.
    None,
    /// Some membership margin fell inside the `±1e-12` band — a tangential
    /// or endpoint-grazing configuration that callers count, never guess.
    Ambiguous,
}

/// Classify whether two minor arcs cross, with an explicit ambiguity band.
///
/// Arcs sharing an endpoint (chord within `1e-12`) are non-crossing by
/// convention: in general position adjacent edges meet only at the shared
/// vertex. Coincident great circles are an error for the caller to count or
/// resample.
pub fn classify_arcs_cross(e1: &GeodesicArc, e2: &GeodesicArc) -> Result<Crossing, GeomError> {
    if shares_endpoint(e1, e2) {
        return Ok(Crossing::None);
    }
    let axis = e1.normal.cross(e2.normal);
    let axis_norm = axis.norm();
    if axis_norm < COINCIDENT_CIRCLE_TOL {
        return Err(GeomError::CoincidentGreatCircles { cross_norm: axis_norm });
    }
    let t = axis
        .normalized()
        .expect("norm checked above");

    let margin_t = e1.interior_margin(t).min(e2.interior_margin(t));
    let u = t.antipode();
    let margin_u = e1.interior_margin(u).min(e2.interior_margin(u));
    // A minor arc cannot contain both antipodes, so at most one candidate
    // has a positive margin; take the better one.
    let margin = margin_t.max(margin_u);

    if margin > STRICT_CROSS_MARGIN {
        Ok(Crossing::Proper)
    } else if margin < -STRICT_CROSS_MARGIN {
        Ok(Crossing::None)
    } else {
        Ok(Crossing::Ambiguous)
    }
}

/// Strict crossing predicate: `true` only for [`Crossing::Proper`].
pub fn arcs_cross(e1: &GeodesicArc, e2: &GeodesicArc) -> Result<bool, GeomError> {
    Ok(classify_arcs_cross(e1, e2)? == Crossing::Proper)
}

fn shares_endpoint(e1: &GeodesicArc, e2: &GeodesicArc) -> bool {
    e1.a.sq_chord(e2.a) <= SHARED_ENDPOINT_SQ_CHORD
        || e1.a.sq_chord(e2.b) <= SHARED_ENDPOINT_SQ_CHORD
        || e1.b.sq_chord(e2.a) <= SHARED_ENDPOINT_SQ_CHORD
        || e1.b.sq_chord(e2.b) <= SHARED_ENDPOINT_SQ_CHORD
}
