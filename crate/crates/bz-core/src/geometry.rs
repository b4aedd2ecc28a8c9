use nalgebra::Vector3;

use crate::error::{Error, Result};

/// Allowed deviation of `|v|` from one.
pub const UNIT_NORM_TOL: f64 = 1e-10;
/// Two vertices closer than this to being antipodal make a triangle degenerate.
pub const ANTIPODAL_TOL: f64 = 1e-9;

/// A point on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec3(Vector3<f64>);

impl UnitVec3 {
    pub const X: UnitVec3 = UnitVec3(Vector3::new(1.0, 0.0, 0.0));
    pub const Y: UnitVec3 = UnitVec3(Vector3::new(0.0, 1.0, 0.0));
    pub const Z: UnitVec3 = UnitVec3(Vector3::new(0.0, 0.0, 1.0));

    pub fn new(sx: f64, sy: f64, sz: f64) -> Result<Self> {
        let v = Vector3::new(sx, sy, sz);
        if (v.norm() - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::InvalidParameter(format!("({sx}, {sy}, {sz}) is not a unit vector")));
        }
        Ok(UnitVec3(v))
    }

    /// Normalizes `v`; `None` for the zero vector or non-finite input.
    pub fn normalize(v: &Vector3<f64>) -> Option<Self> {
        let n = v.norm();
        if n > 0.0 && n.is_finite() {
            Some(UnitVec3(v / n))
        } else {
            None
        }
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn as_vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn antipode(&self) -> Self {
        UnitVec3(-self.0)
    }
}

/// Signed solid angle of the spherical triangle `(v1, v2, v3)`:
/// `Ω = 2·atan2(v1·(v2×v3), 1 + v1·v2 + v2·v3 + v3·v1)`.
pub fn solid_angle(v1: &UnitVec3, v2: &UnitVec3, v3: &UnitVec3) -> Result<f64> {
    let (a, b, c) = (&v1.0, &v2.0, &v3.0);
    if (a + b).norm() < ANTIPODAL_TOL || (b + c).norm() < ANTIPODAL_TOL || (c + a).norm() < ANTIPODAL_TOL {
        return Err(Error::DegenerateTriangle { at: None });
    }
    let num = a.dot(&b.cross(c));
    let den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    Ok(2.0 * num.atan2(den))
}
