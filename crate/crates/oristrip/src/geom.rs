//! Small fixed-size vector and angle utilities.
//!
//! Everything is `f64` and routed through `libm`, keeping the crate `no_std`
//! and the arithmetic deterministic.

use core::ops::{Add, Mul, Neg, Sub};

pub use core::f64::consts::PI;

/// Two pi, used for angle reduction.
pub const TAU: f64 = 2.0 * PI;

/// A point or direction in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, rhs: Self) -> f64 {
        self.x * rhs.x + self.y * rhs.y
    }

    /// z-component of the cross product; positive when `rhs` lies
    /// counterclockwise of `self`.
    pub fn perp_dot(self, rhs: Self) -> f64 {
        self.x * rhs.y - self.y * rhs.x
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Self::new(self.x / n, self.y / n)
    }

    /// Rotates counterclockwise by `angle`.
    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn dist(self, rhs: Self) -> f64 {
        (self - rhs).norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

/// A point or direction in 3-space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, rhs: Self) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(self, rhs: Self) -> Self {
        Self::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    pub fn norm(self) -> f64 {
        libm::sqrt(self.dot(self))
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Self::new(self.x / n, self.y / n, self.z / n)
    }

    pub fn dist(self, rhs: Self) -> f64 {
        (self - rhs).norm()
    }

    /// Rodrigues rotation of `self` by `angle` about the unit axis `axis`
    /// (right-handed).
    pub fn rotated_about(self, axis: Vec3, angle: f64) -> Self {
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        let cross = axis.cross(self);
        let axial = axis * (axis.dot(self) * (1.0 - c));
        self * c + cross * s + axial
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
    fn mul(self, rhs: f64) -> Vec3 {
        Vec3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Reduces an angle into `(-pi, pi]`; a tie at `-pi` maps to `+pi`.
pub fn normalize_angle(x: f64) -> f64 {
    let mut r = x - TAU * libm::floor(x / TAU);
    // r is in [0, 2*pi); fold the upper half down.
    if r > PI {
        r -= TAU;
    }
    if r <= -PI {
        r = PI;
    }
    r
}

/// Counterclockwise angle from `a` to `b`, in `[0, 2*pi)`.
pub fn ccw_angle(a: Vec2, b: Vec2) -> f64 {
    let ang = libm::atan2(a.perp_dot(b), a.dot(b));
    if ang < 0.0 {
        ang + TAU
    } else {
        ang
    }
}

pub fn deg_to_rad(deg: f64) -> f64 {
    deg * (PI / 180.0)
}

pub fn rad_to_deg(rad: f64) -> f64 {
    rad * (180.0 / PI)
}

/// `acos` with a tolerance window: arguments within `tol` of [-1, 1] are
/// clamped, anything further out is rejected.
pub fn acos_clamped(x: f64, tol: f64) -> Option<f64> {
    if x > 1.0 + tol || x < -1.0 - tol {
        return None;
    }
    Some(libm::acos(x.clamp(-1.0, 1.0)))
}

/// Sign in {-1, 0, +1} matching the convention sgn(0) = 0.
pub fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}
