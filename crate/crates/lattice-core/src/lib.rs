//! Exact arithmetic for the planar lattice geometry underneath the triangle
//! mutation calculus: arbitrary-precision rational vectors, primitive integer
//! directions, and unimodular (|det| = 1) integer maps, including the shear
//! maps attached to primitive directions.
//!
//! Everything here is exact; no floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("vector ({0}, {1}) is not primitive")]
    NotPrimitive(BigInt, BigInt),
    #[error("matrix has determinant {0}, not a unit")]
    NotUnimodular(BigInt),
    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },
}

/// Parses `"p/q"` or `"p"` into an exact rational in lowest terms.
///
/// The denominator may carry a sign in the input; the result is canonical
/// (positive denominator). A zero denominator is an error, never a panic.
pub fn parse_rat(s: &str) -> Result<Rat, LatticeError> {
    let err = |reason: &str| LatticeError::ParseRational {
        input: s.to_owned(),
        reason: reason.to_owned(),
    };
    let mut parts = s.splitn(2, '/');
    let p = parts.next().ok_or_else(|| err("empty"))?;
    let numer = BigInt::from_str(p.trim()).map_err(|e| err(&e.to_string()))?;
    match parts.next() {
        None => Ok(Rat::from(numer)),
        Some(q) => {
            let denom = BigInt::from_str(q.trim()).map_err(|e| err(&e.to_string()))?;
            if denom.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_from_i64(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

/// Exact rational point/vector in the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2Q {
    pub x: Rat,
    pub y: Rat,
}

impl Vec2Q {
    pub fn new(x: Rat, y: Rat) -> Self {
        Vec2Q { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2Q::new(rat_from_i64(x), rat_from_i64(y))
    }

    /// `x1 y2 - x2 y1`; positive iff `other` is counterclockwise from `self`.
    pub fn cross(&self, other: &Vec2Q) -> Rat {
        &self.x * &other.y - &other.x * &self.y
    }

    pub fn dot(&self, other: &Vec2Q) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn sub(&self, other: &Vec2Q) -> Vec2Q {
        Vec2Q::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &Vec2Q) -> Vec2Q {
        Vec2Q::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, k: &Rat) -> Vec2Q {
        Vec2Q::new(k * &self.x, k * &self.y)
    }

    pub fn neg(&self) -> Vec2Q {
        Vec2Q::new(-self.x.clone(), -self.y.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for Vec2Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rat_to_string(&self.x), rat_to_string(&self.y))
    }
}

impl Serialize for Vec2Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [rat_to_string(&self.x), rat_to_string(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vec2Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        Ok(Vec2Q::new(
            parse_rat(&x).map_err(D::Error::custom)?,
            parse_rat(&y).map_err(D::Error::custom)?,
        ))
    }
}

/// Integer lattice vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2Z {
    pub x: BigInt,
    pub y: BigInt,
}

impl Vec2Z {
    pub fn new(x: BigInt, y: BigInt) -> Self {
        Vec2Z { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2Z::new(BigInt::from(x), BigInt::from(y))
    }

    pub fn cross(&self, other: &Vec2Z) -> BigInt {
        &self.x * &other.y - &other.x * &self.y
    }

    pub fn dot(&self, other: &Vec2Z) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn neg(&self) -> Vec2Z {
        Vec2Z::new(-self.x.clone(), -self.y.clone())
    }

    pub fn to_q(&self) -> Vec2Q {
        Vec2Q::new(Rat::from(self.x.clone()), Rat::from(self.y.clone()))
    }

    /// gcd(|x|, |y|) = 1 (and not the zero vector).
    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }
}

impl fmt::Display for Vec2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Vec2Z {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vec2Z {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let parse = |s: &str| BigInt::from_str(s.trim()).map_err(D::Error::custom);
        Ok(Vec2Z::new(parse(&x)?, parse(&y)?))
    }
}

/// The primitive integer vector pointing in the direction of `v`.
///
/// Denominators are cleared and the common factor divided out; orientation is
/// preserved. The zero vector is an error.
pub fn primitive(v: &Vec2Q) -> Result<Vec2Z, LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let l = v.x.denom().lcm(v.y.denom());
    let x = v.x.numer() * (&l / v.x.denom());
    let y = v.y.numer() * (&l / v.y.denom());
    let g = x.gcd(&y);
    Ok(Vec2Z::new(x / &g, y / &g))
}

/// `primitive` for a vector that is already integral.
pub fn primitive_z(v: &Vec2Z) -> Result<Vec2Z, LatticeError> {
    if v.x.is_zero() && v.y.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let g = v.x.gcd(&v.y);
    Ok(Vec2Z::new(&v.x / &g, &v.y / &g))
}

// ---------------------------------------------------------------------------
// Integer matrices and unimodular maps
// ---------------------------------------------------------------------------

/// 2x2 integer matrix, row major: [[a, b], [c, d]].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2Z {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2Z {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Mat2Z { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2Z::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d))
    }

    pub fn identity() -> Self {
        Mat2Z::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply_z(&self, v: &Vec2Z) -> Vec2Z {
        Vec2Z::new(&self.a * &v.x + &self.b * &v.y, &self.c * &v.x + &self.d * &v.y)
    }

    pub fn apply_q(&self, v: &Vec2Q) -> Vec2Q {
        let (a, b) = (Rat::from(self.a.clone()), Rat::from(self.b.clone()));
        let (c, d) = (Rat::from(self.c.clone()), Rat::from(self.d.clone()));
        Vec2Q::new(a * &v.x + b * &v.y, c * &v.x + d * &v.y)
    }

    pub fn mul(&self, rhs: &Mat2Z) -> Mat2Z {
        Mat2Z::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Mat2Z {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [
            [self.a.to_string(), self.b.to_string()],
            [self.c.to_string(), self.d.to_string()],
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat2Z {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [[a, b], [c, dd]] = <[[String; 2]; 2]>::deserialize(d)?;
        let parse = |s: &str| BigInt::from_str(s.trim()).map_err(D::Error::custom);
        Ok(Mat2Z::new(parse(&a)?, parse(&b)?, parse(&c)?, parse(&dd)?))
    }
}

/// det = +1 or -1.
pub fn is_unimodular(m: &Mat2Z) -> bool {
    m.det().abs().is_one()
}

/// Integer matrix with |det| = 1, i.e. an element of GL(2, Z).
///
/// The determinant condition is checked at construction, so a value of this
/// type always acts bijectively on the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Unimodular(Mat2Z);

impl Unimodular {
    pub fn new(m: Mat2Z) -> Result<Self, LatticeError> {
        if is_unimodular(&m) {
            Ok(Unimodular(m))
        } else {
            Err(LatticeError::NotUnimodular(m.det()))
        }
    }

    pub fn identity() -> Self {
        Unimodular(Mat2Z::identity())
    }

    pub fn matrix(&self) -> &Mat2Z {
        &self.0
    }

    pub fn det(&self) -> BigInt {
        self.0.det()
    }

    pub fn apply(&self, v: &Vec2Q) -> Vec2Q {
        self.0.apply_q(v)
    }

    pub fn apply_z(&self, v: &Vec2Z) -> Vec2Z {
        self.0.apply_z(v)
    }

    pub fn compose(&self, rhs: &Unimodular) -> Unimodular {
        Unimodular(self.0.mul(&rhs.0))
    }

    /// Exact inverse; for |det| = 1 the adjugate divided by det stays integral.
    pub fn inverse(&self) -> Unimodular {
        let det = self.0.det(); // +1 or -1
        let m = Mat2Z::new(
            &self.0.d / &det,
            -(&self.0.b) / &det,
            -(&self.0.c) / &det,
            &self.0.a / &det,
        );
        Unimodular(m)
    }
}

impl<'de> Deserialize<'de> for Unimodular {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Unimodular::new(Mat2Z::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl fmt::Display for Unimodular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The shear attached to a primitive direction:
/// `sigma_vhat(p) = p + (vhat x p) vhat`.
///
/// It fixes the line spanned by `vhat` pointwise and translates each parallel
/// line by its (signed) lattice distance from the axis; as a matrix for
/// `vhat = (x, y)` it is `[[1 - xy, x^2], [-y^2, 1 + xy]]`, determinant 1.
/// Non-primitive input is rejected.
pub fn shear_by(vhat: &Vec2Z) -> Result<Unimodular, LatticeError> {
    if !vhat.is_primitive() {
        return Err(LatticeError::NotPrimitive(vhat.x.clone(), vhat.y.clone()));
    }
    let (x, y) = (&vhat.x, &vhat.y);
    let m = Mat2Z::new(
        BigInt::one() - x * y,
        x * x,
        -(y * y),
        BigInt::one() + x * y,
    );
    debug_assert!(m.det().is_one());
    Ok(Unimodular(m))
}

/// Applies a unimodular map to a rational point (free-function form).
pub fn apply(a: &Unimodular, p: &Vec2Q) -> Vec2Q {
    a.apply(p)
}
