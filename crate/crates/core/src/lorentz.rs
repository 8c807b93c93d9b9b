//! Vector algebra in Minkowski 3-space.
//!
//! Two signatures are in use: diag(+1,+1,-1) for spacelike (maximal)
//! surfaces and diag(-1,+1,+1) for timelike minimal surfaces. Both have
//! determinant -1, so the Lorentzian cross product is the Euclidean one
//! with the flipped axis negated.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance on the quadratic form when deciding lightlike-ness.
pub const LIGHTLIKE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Signature {
    /// dx² + dy² - dz²
    Ppm,
    /// -dx² + dy² + dz²
    Mpp,
}

impl Signature {
    pub const fn diag(self) -> [f64; 3] {
        match self {
            Signature::Ppm => [1.0, 1.0, -1.0],
            Signature::Mpp => [-1.0, 1.0, 1.0],
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Signature::Ppm => "(+,+,-)",
            Signature::Mpp => "(-,+,+)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

impl fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CausalCharacter::Spacelike => "spacelike",
            CausalCharacter::Timelike => "timelike",
            CausalCharacter::Lightlike => "lightlike",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3L {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3L {
    pub const ZERO: Vec3L = Vec3L {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3L { x, y, z }
    }

    /// Checked constructor; rejects NaN and infinite components.
    pub fn try_new(x: f64, y: f64, z: f64) -> Result<Self> {
        Vec3L::new(x, y, z).finite()
    }

    pub fn finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(format!(
                "vector ({}, {}, {})",
                self.x, self.y, self.z
            )))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    pub const fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot_euclid(&self, other: &Vec3L) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_euclid(&self) -> f64 {
        self.dot_euclid(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Vec3L) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Add for Vec3L {
    type Output = Vec3L;
    fn add(self, o: Vec3L) -> Vec3L {
        Vec3L::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3L {
    type Output = Vec3L;
    fn sub(self, o: Vec3L) -> Vec3L {
        Vec3L::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3L {
    type Output = Vec3L;
    fn mul(self, k: f64) -> Vec3L {
        Vec3L::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Neg for Vec3L {
    type Output = Vec3L;
    fn neg(self) -> Vec3L {
        Vec3L::new(-self.x, -self.y, -self.z)
    }
}

pub fn inner(a: Vec3L, b: Vec3L, sig: Signature) -> f64 {
    let [d0, d1, d2] = sig.diag();
    d0 * a.x * b.x + d1 * a.y * b.y + d2 * a.z * b.z
}

/// Classifies `v` by the sign of `<v,v>`. The zero vector counts as spacelike.
pub fn causal_character(v: Vec3L, sig: Signature, tol: f64) -> CausalCharacter {
    let q = inner(v, v, sig);
    if v.is_zero() || q > tol {
        CausalCharacter::Spacelike
    } else if q < -tol {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Lightlike
    }
}

/// Lorentzian cross product: Lorentz-orthogonal to both factors.
pub fn lorentz_cross(a: Vec3L, b: Vec3L, sig: Signature) -> Vec3L {
    let c = Vec3L::new(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    );
    let [d0, d1, d2] = sig.diag();
    Vec3L::new(d0 * c.x, d1 * c.y, d2 * c.z)
}

pub fn normalize(v: Vec3L, sig: Signature) -> Result<Vec3L> {
    normalize_with_tol(v, sig, LIGHTLIKE_TOL)
}

pub fn normalize_with_tol(v: Vec3L, sig: Signature, tol: f64) -> Result<Vec3L> {
    let q = inner(v, v, sig);
    if !(q.abs() > tol) {
        return Err(Error::DegenerateNormal { norm: q.abs(), tol });
    }
    Ok(v * (1.0 / q.abs().sqrt()))
}
