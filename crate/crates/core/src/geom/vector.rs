//! 3-vectors, points on the unit sphere, and rotations.

use std::ops::{Add, Mul, Neg, Sub};

use super::GeomError;
use crate::tolerances::UNIT_NORM_TOL;

/// A plain 3-vector. Intermediate cross/difference results live here; points
/// on the sphere are promoted to [`UnitVector`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Self) -> Self {
        Self {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// `None` when the vector is too short to normalize meaningfully.
    pub fn normalized(self) -> Option<UnitVector> {
        let n = self.norm();
        if n < 1e-12 {
            return None;
        }
        Some(UnitVector(Self {
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A point on the unit sphere: `|x² + y² + z² - 1| ≤ 1e-12` is enforced at
/// construction and re-established by [`Vec3::normalized`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitVector(Vec3);

impl UnitVector {
    /// Checked constructor.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, GeomError> {
        let v = Vec3::new(x, y, z);
        let err = (v.norm_squared() - 1.0).abs();
        if err > UNIT_NORM_TOL {
            return Err(GeomError::NotUnit { norm_sq_error: err });
        }
        Ok(Self(v))
    }

    /// For coordinates known to be exactly unit (axes, hand-built fixtures).
    pub const fn new_unchecked(x: f64, y: f64, z: f64) -> Self {
        Self(Vec3::new(x, y, z))
    }

    pub const X: UnitVector = UnitVector::new_unchecked(1.0, 0.0, 0.0);
    pub const Y: UnitVector = UnitVector::new_unchecked(0.0, 1.0, 0.0);
    pub const Z: UnitVector = UnitVector::new_unchecked(0.0, 0.0, 1.0);

    #[inline]
    pub fn x(self) -> f64 {
        self.0.x
    }

    #[inline]
    pub fn y(self) -> f64 {
        self.0.y
    }

    #[inline]
    pub fn z(self) -> f64 {
        self.0.z
    }

    #[inline]
    pub fn as_vec3(self) -> Vec3 {
        self.0
    }

    #[inline]
    pub fn dot(self, other: UnitVector) -> f64 {
        self.0.dot(other.0)
    }

    #[inline]
    pub fn cross(self, other: UnitVector) -> Vec3 {
        self.0.cross(other.0)
    }

    /// Squared Euclidean (chord) distance to another unit vector.
    #[inline]
    pub fn sq_chord(self, other: UnitVector) -> f64 {
        (self.0 - other.0).norm_squared()
    }

    #[inline]
    pub fn antipode(self) -> UnitVector {
        UnitVector(-self.0)
    }
}

/// Great-circle (angular) distance in `[0, π]`: `arccos` of the clamped dot
/// product. Symmetric; zero exactly when the points coincide.
pub fn great_circle_distance(p: UnitVector, q: UnitVector) -> f64 {
    p.dot(q).clamp(-1.0, 1.0).acos()
}

/// A rotation of the sphere, stored row-major.
///
/// Used for rotation-invariance checks and for retrying projections with a
/// different pole; inputs come out re-normalized so the `UnitVector`
/// invariant survives arbitrary composition.
#[derive(Clone, Copy, Debug)]
pub struct Rotation {
    rows: [Vec3; 3],
}

impl Rotation {
    /// Build from a unit quaternion `(w, x, y, z)`. The quaternion is
    /// normalized internally, so any non-zero 4-tuple is accepted.
    pub fn from_quaternion(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        let (w, x, y, z) = (w / n, x / n, y / n, z / n);
        Self {
            rows: [
                Vec3::new(
                    1.0 - 2.0 * (y * y + z * z),
                    2.0 * (x * y - w * z),
                    2.0 * (x * z + w * y),
                ),
                Vec3::new(
                    2.0 * (x * y + w * z),
                    1.0 - 2.0 * (x * x + z * z),
                    2.0 * (y * z - w * x),
                ),
                Vec3::new(
                    2.0 * (x * z - w * y),
                    2.0 * (y * z + w * x),
                    1.0 - 2.0 * (x * x + y * y),
                ),
            ],
        }
    }

    pub fn identity() -> Self {
        Self::from_quaternion(1.0, 0.0, 0.0, 0.0)
    }

    pub fn apply(&self, p: UnitVector) -> UnitVector {
        let v = p.as_vec3();
        Vec3::new(self.rows[0].dot(v), self.rows[1].dot(v), self.rows[2].dot(v))
            .normalized()
            .expect("rotation preserves length")
    }
}

/// A point in the projection plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarPoint {
    pub u: f64,
    pub v: f64,
}

impl PlanarPoint {
    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    #[inline]
    pub fn distance(self, other: Self) -> f64 {
        ((self.u - other.u).powi(2) + (self.v - other.v).powi(2)).sqrt()
    }

    #[inline]
    pub fn translated(self, du: f64, dv: f64) -> Self {
        Self::new(self.u + du, self.v + dv)
    }
}
