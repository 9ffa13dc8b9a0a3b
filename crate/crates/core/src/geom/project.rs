//! Gnomonic and stereographic projections.
//!
//! Both serve as independent oracles for the spherical crossing machinery:
//! the gnomonic projection maps great circles to straight lines inside a
//! hemisphere, and the stereographic projection is a homeomorphism of
//! sphere-minus-pole that maps great circles to circles (or lines, through
//! the pole), so planar crossing counts must reproduce spherical ones.

use super::vector::{PlanarPoint, UnitVector, Vec3};
use super::GeomError;
use crate::tolerances::{GNOMONIC_MIN_COS, STEREOGRAPHIC_POLE_TOL};

/// Deterministic orthonormal basis `(e1, e2)` of the plane orthogonal to
/// `pole`, with `e2 = pole × e1`.
///
/// `e1` is the coordinate axis least aligned with the pole, Gram–Schmidt
/// orthogonalized against it (lowest axis index wins ties), so projections
/// are reproducible bit-for-bit given identical inputs.
pub fn tangent_basis(pole: UnitVector) -> (Vec3, Vec3) {
    let p = pole.as_vec3();
    let ax = p.x.abs();
    let ay = p.y.abs();
    let az = p.z.abs();
    let axis = if ax <= ay && ax <= az {
        Vec3::new(1.0, 0.0, 0.0)
    } else if ay <= az {
        Vec3::new(0.0, 1.0, 0.0)
    } else {
        Vec3::new(0.0, 0.0, 1.0)
    };
    let e1 = (axis - p * axis.dot(p))
        .normalized()
        .expect("axis least aligned with pole cannot be parallel to it")
        .as_vec3();
    let e2 = p.cross(e1);
    (e1, e2)
}

/// Central (gnomonic) projection of `p` onto the tangent plane at `pole`.
///
/// Requires `p · pole > 1e-6`; within the open hemisphere, great-circle
/// arcs map to straight segments.
pub fn gnomonic_project(p: UnitVector, pole: UnitVector) -> Result<PlanarPoint, GeomError> {
    let c = p.dot(pole);
    if c <= GNOMONIC_MIN_COS {
        return Err(GeomError::OutsideHemisphere { cos_angle: c });
    }
    let (e1, e2) = tangent_basis(pole);
    let v = p.as_vec3();
    Ok(PlanarPoint::new(v.dot(e1) / c, v.dot(e2) / c))
}

/// Stereographic projection from `pole` onto the plane through the origin
/// orthogonal to `pole`.
///
/// The image of `p` is the intersection of the line pole→p with that plane:
/// coordinates `(p·e1, p·e2) / (1 - p·pole)`. The antipode of the pole maps
/// to the origin and the equator of the pole to the unit circle.
pub fn stereographic_project(p: UnitVector, pole: UnitVector) -> Result<PlanarPoint, GeomError> {
    let c = p.dot(pole);
    if c >= 1.0 - STEREOGRAPHIC_POLE_TOL {
        return Err(GeomError::AtPole { cos_angle: c });
    }
    let (e1, e2) = tangent_basis(pole);
    let v = p.as_vec3();
    let scale = 1.0 / (1.0 - c);
    Ok(PlanarPoint::new(v.dot(e1) * scale, v.dot(e2) * scale))
}
