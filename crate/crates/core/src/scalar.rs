//! Scalar rings: Q, Q[√2], f64, and the complex/quaternion extensions over them.

use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::matrix::Matrix;

/// Exact rationals. Always reduced, denominator positive.
pub type Q = BigRational;

/// Ring tags used by tagged matrices and the file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Rational,
    RationalSqrt2,
    Complex,
    Quaternion,
    QuaternionSqrt2,
    Float64,
    ComplexFloat64,
    QuaternionFloat64,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Rational => "rational",
            Ring::RationalSqrt2 => "sqrt2",
            Ring::Complex => "complex",
            Ring::Quaternion => "quaternion",
            Ring::QuaternionSqrt2 => "quaternion_sqrt2",
            Ring::Float64 => "float64",
            Ring::ComplexFloat64 => "complex_float64",
            Ring::QuaternionFloat64 => "quaternion_float64",
        }
    }

    /// Canonical embeddings rational ↪ complex ↪ quaternion.
    pub fn embeds_into(self, target: Ring) -> bool {
        use Ring::*;
        matches!(
            (self, target),
            (Rational, Rational)
                | (Rational, Complex)
                | (Rational, Quaternion)
                | (Complex, Complex)
                | (Complex, Quaternion)
                | (Quaternion, Quaternion)
                | (Rational, RationalSqrt2)
                | (RationalSqrt2, RationalSqrt2)
                | (Float64, Float64)
        )
    }
}

/// Associative unital ring with an involutive conjugation, a real subfield and
/// (possibly noncommutative) inverses of nonzero elements.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Real: RealScalar;

    const RING: Ring;
    /// Exact rings compare with `==`; float rings use tolerances.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_real(r: Self::Real) -> Self;
    fn re(&self) -> Self::Real;
    /// Euclidean size of the value as f64, used for norms and diagnostics.
    fn magnitude(&self) -> f64;

    /// Real components: the value itself, (re, im) or (w, x, y, z).
    fn real_parts(&self) -> alloc::vec::Vec<Self::Real> {
        alloc::vec![self.re()]
    }

    fn from_i64(n: i64) -> Self {
        Self::from_real(<Self::Real as RealScalar>::from_ratio(n, 1))
    }

    fn approx_zero(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }

    /// Matrix inverse over this ring. The default is Gauss-Jordan with left
    /// row operations, which is valid over any division ring.
    fn matrix_inverse(m: &Matrix<Self>) -> Option<Matrix<Self>> {
        crate::matrix::gauss_jordan_inverse(m)
    }
}

/// Commutative scalars (determinants are defined).
pub trait Field: Scalar {}

/// Real ordered fields: Q, Q[√2], f64.
pub trait RealScalar: Scalar<Real = Self> + Field {
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_negative(&self) -> bool;
    fn half() -> Self {
        Self::from_ratio(1, 2)
    }
}

/// Mapping of an exact scalar to its float counterpart.
pub trait ToFloat {
    type Float: Scalar;
    fn to_float(&self) -> Self::Float;
}

impl Scalar for Q {
    type Real = Q;
    const RING: Ring = Ring::Rational;
    const EXACT: bool = true;

    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_real(r: Q) -> Self {
        r
    }
    fn re(&self) -> Q {
        self.clone()
    }
    fn magnitude(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self)
            .map(f64::abs)
            .unwrap_or(f64::INFINITY)
    }
}

impl Field for Q {}

impl RealScalar for Q {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl ToFloat for Q {
    type Float = f64;
    fn to_float(&self) -> f64 {
        RealScalar::to_f64(self)
    }
}

impl Scalar for f64 {
    type Real = f64;
    const RING: Ring = Ring::Float64;
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn conj(&self) -> Self {
        *self
    }
    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn from_real(r: f64) -> Self {
        r
    }
    fn re(&self) -> f64 {
        *self
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Field for f64 {}

impl RealScalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

impl ToFloat for f64 {
    type Float = f64;
    fn to_float(&self) -> f64 {
        *self
    }
}

/// a + b√2 with a, b rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub a: Q,
    pub b: Q,
}

impl QSqrt2 {
    pub fn new(a: Q, b: Q) -> Self {
        QSqrt2 { a, b }
    }

    pub fn rational(a: Q) -> Self {
        QSqrt2 {
            a,
            b: <Q as Scalar>::zero(),
        }
    }

    /// 1/√2 = √2/2.
    pub fn inv_sqrt2() -> Self {
        QSqrt2 {
            a: <Q as Scalar>::zero(),
            b: Q::from_ratio(1, 2),
        }
    }

    /// √v inside Q[√2] for rational v ≥ 0, when v or v/2 is a rational square.
    pub fn sqrt_of_rational(v: &Q) -> Option<Self> {
        if Signed::is_negative(v) {
            return None;
        }
        if let Some(r) = rational_sqrt(v) {
            return Some(QSqrt2::rational(r));
        }
        let half = v / Q::from_integer(BigInt::from(2));
        rational_sqrt(&half).map(|r| QSqrt2 {
            a: <Q as Scalar>::zero(),
            b: r,
        })
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(v: &Q) -> Option<Q> {
    if Signed::is_negative(v) {
        return None;
    }
    let n = v.numer().to_biguint()?;
    let d = v.denom().to_biguint()?;
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &rn * &rn == n && &rd * &rd == d {
        Some(BigRational::new(BigInt::from(rn), BigInt::from(rd)))
    } else {
        None
    }
}

impl Add for QSqrt2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QSqrt2 {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for QSqrt2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QSqrt2 {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl Mul for QSqrt2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = Q::from_integer(BigInt::from(2));
        QSqrt2 {
            a: &self.a * &o.a + two * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for QSqrt2 {
    type Output = Self;
    fn neg(self) -> Self {
        QSqrt2 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Scalar for QSqrt2 {
    type Real = QSqrt2;
    const RING: Ring = Ring::RationalSqrt2;
    const EXACT: bool = true;

    fn zero() -> Self {
        QSqrt2::rational(<Q as Scalar>::zero())
    }
    fn one() -> Self {
        QSqrt2::rational(<Q as Scalar>::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        // (a - b√2)/(a² - 2b²); the norm vanishes only at 0 since √2 is irrational.
        let two = Q::from_integer(BigInt::from(2));
        let norm = &self.a * &self.a - two * &self.b * &self.b;
        if norm.is_zero() {
            return None;
        }
        Some(QSqrt2 {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
        })
    }
    fn from_real(r: Self) -> Self {
        r
    }
    fn re(&self) -> Self {
        self.clone()
    }
    fn magnitude(&self) -> f64 {
        RealScalar::to_f64(self).abs()
    }
}

impl Field for QSqrt2 {}

impl RealScalar for QSqrt2 {
    fn from_ratio(num: i64, den: i64) -> Self {
        QSqrt2::rational(Q::from_ratio(num, den))
    }
    fn to_f64(&self) -> f64 {
        RealScalar::to_f64(&self.a) + core::f64::consts::SQRT_2 * RealScalar::to_f64(&self.b)
    }
    fn is_negative(&self) -> bool {
        RealScalar::to_f64(self) < 0.0
    }
}

impl ToFloat for QSqrt2 {
    type Float = f64;
    fn to_float(&self) -> f64 {
        RealScalar::to_f64(self)
    }
}

impl From<Q> for QSqrt2 {
    fn from(a: Q) -> Self {
        QSqrt2::rational(a)
    }
}

/// Shorthand for the rational p/q.
pub fn q(num: i64, den: i64) -> Q {
    Q::from_ratio(num, den)
}

/// Shorthand for the integer n as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}
