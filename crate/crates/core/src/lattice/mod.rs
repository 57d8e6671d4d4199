//! Exact arithmetic in the rank-2 weight lattice `Z²`.
//!
//! Coordinates are `i64`; every product that can leave that range (cross
//! products, determinants) is formed in `i128`.

mod smith;

pub use smith::{quotient_shape, IntMatrix, QuotientShape, SmithForm};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of the weight lattice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Weight {
    pub x: i64,
    pub y: i64,
}

impl Weight {
    pub const fn new(x: i64, y: i64) -> Self {
        Weight { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// `self.x * other.y - self.y * other.x`.
    pub fn cross(self, other: Weight) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }

    /// Standard pairing.
    pub fn dot(self, other: Weight) -> i128 {
        self.x as i128 * other.x as i128 + self.y as i128 * other.y as i128
    }

    pub fn is_independent(self, other: Weight) -> bool {
        self.cross(other) != 0
    }

    /// Representative of `±self` whose first nonzero coordinate is positive.
    pub fn canonical(self) -> Weight {
        if self.x < 0 || (self.x == 0 && self.y < 0) {
            -self
        } else {
            self
        }
    }

    /// Equality up to sign.
    pub fn eq_up_to_sign(self, other: Weight) -> bool {
        self == other || self == -other
    }

    /// Divides out the gcd of the coordinates. The zero vector is returned unchanged.
    pub fn primitive(self) -> Weight {
        let g = num::integer::gcd(self.x, self.y);
        if g == 0 {
            self
        } else {
            Weight::new(self.x / g, self.y / g)
        }
    }

    /// Evaluates the linear form `x·u1 + y·u2` at `(u1, u2)`.
    pub fn eval(self, u1: i128, u2: i128) -> i128 {
        self.x as i128 * u1 + self.y as i128 * u2
    }

    /// `±1` according to the orientation of `(self, other)`, `0` if dependent.
    pub fn orientation(self, other: Weight) -> i8 {
        self.cross(other).signum() as i8
    }
}

impl From<[i64; 2]> for Weight {
    fn from(v: [i64; 2]) -> Self {
        Weight::new(v[0], v[1])
    }
}

impl From<Weight> for [i64; 2] {
    fn from(w: Weight) -> Self {
        [w.x, w.y]
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.x, -self.y)
    }
}

impl Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, w: Weight) -> Weight {
        Weight::new(self * w.x, self * w.y)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A weight up to sign, stored by its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnsignedWeight(Weight);

impl UnsignedWeight {
    pub fn new(w: Weight) -> Self {
        UnsignedWeight(w.canonical())
    }

    pub fn rep(self) -> Weight {
        self.0
    }
}

impl fmt::Display for UnsignedWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±{}", self.0)
    }
}

/// Determinant of the matrix with columns `a`, `b`.
pub fn det(a: Weight, b: Weight) -> i128 {
    a.cross(b)
}

/// True iff `a`, `b` form a basis of `Z²`.
pub fn is_basis(a: Weight, b: Weight) -> bool {
    det(a, b).abs() == 1
}

/// Solves `a = b + c·g` (signed) or `a = ±b + c·g` (unsigned, `+b` preferred).
///
/// `g` must be nonzero.
pub fn congruent_mod(a: Weight, b: Weight, g: Weight, signed: bool) -> Option<i64> {
    assert!(!g.is_zero(), "congruence modulo the zero weight");
    let solve = |b: Weight| -> Option<i64> {
        let dx = a.x as i128 - b.x as i128;
        let dy = a.y as i128 - b.y as i128;
        let (num, den) = if g.x != 0 { (dx, g.x as i128) } else { (dy, g.y as i128) };
        if num % den != 0 {
            return None;
        }
        let c = num / den;
        if dx == c * g.x as i128 && dy == c * g.y as i128 {
            i64::try_from(c).ok()
        } else {
            None
        }
    };
    solve(b).or_else(|| if signed { None } else { solve(-b) })
}

/// The dual basis `(a*, b*)` with respect to the standard pairing.
pub fn dual_basis(a: Weight, b: Weight) -> Result<(Weight, Weight)> {
    let d = det(a, b);
    if d.abs() != 1 {
        return Err(Error::NotABasis { a, b });
    }
    let d = d as i64;
    Ok((Weight::new(b.y * d, -b.x * d), Weight::new(-a.y * d, a.x * d)))
}

/// Coordinates `(s, t)` with `w = s·a + t·b`, if integral.
pub fn coordinates(w: Weight, a: Weight, b: Weight) -> Option<(i64, i64)> {
    let d = det(a, b);
    if d == 0 {
        return None;
    }
    let s = w.cross(b);
    let t = a.cross(w);
    if s % d != 0 || t % d != 0 {
        return None;
    }
    Some((i64::try_from(s / d).ok()?, i64::try_from(t / d).ok()?))
}

/// An integer 2×2 matrix acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub m: [[i64; 2]; 2],
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { m: [[1, 0], [0, 1]] };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn from_columns(u: Weight, v: Weight) -> Self {
        Mat2::new(u.x, v.x, u.y, v.y)
    }

    pub fn det(&self) -> i128 {
        self.m[0][0] as i128 * self.m[1][1] as i128 - self.m[0][1] as i128 * self.m[1][0] as i128
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn apply(&self, w: Weight) -> Weight {
        Weight::new(
            self.m[0][0] * w.x + self.m[0][1] * w.y,
            self.m[1][0] * w.x + self.m[1][1] * w.y,
        )
    }

    pub fn compose(&self, other: &Mat2) -> Mat2 {
        let a = &self.m;
        let b = &other.m;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let d = d as i64;
        Some(Mat2::new(self.m[1][1] * d, -self.m[0][1] * d, -self.m[1][0] * d, self.m[0][0] * d))
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-self.m[0][0], -self.m[0][1], -self.m[1][0], -self.m[1][1])
    }

    /// The integer matrix sending `a ↦ a2`, `b ↦ b2`, if one exists and is unimodular.
    pub fn sending(a: Weight, b: Weight, a2: Weight, b2: Weight) -> Option<Mat2> {
        let d = det(a, b);
        if d == 0 {
            return None;
        }
        // φ = [a2 b2] · adj([a b]) / d
        let adj = [[b.y as i128, -(b.x as i128)], [-(a.y as i128), a.x as i128]];
        let t = [[a2.x as i128, b2.x as i128], [a2.y as i128, b2.y as i128]];
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let num = t[i][0] * adj[0][j] + t[i][1] * adj[1][j];
                if num % d != 0 {
                    return None;
                }
                *cell = i64::try_from(num / d).ok()?;
            }
        }
        let phi = Mat2 { m: out };
        phi.is_unimodular().then_some(phi)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1])
    }
}
