//! Hamilton quaternions w + xi + yj + zk over a real scalar field.

use core::ops::{Add, Mul, Neg, Sub};

use crate::complex::Complex;
use crate::embeddings;
use crate::matrix::Matrix;
use crate::scalar::{RealScalar, Ring, Scalar, ToFloat, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quaternion<R> {
    pub w: R,
    pub x: R,
    pub y: R,
    pub z: R,
}

impl<R: RealScalar> Quaternion<R> {
    pub fn new(w: R, x: R, y: R, z: R) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion::new(
            R::from_i64(w),
            R::from_i64(x),
            R::from_i64(y),
            R::from_i64(z),
        )
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }
    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }
    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    /// The basis 1, i, j, k in that order.
    pub fn basis() -> [Self; 4] {
        [Self::one(), Self::i(), Self::j(), Self::k()]
    }

    pub fn norm_sq(&self) -> R {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    pub fn is_pure(&self) -> bool {
        self.w.is_zero()
    }

    pub fn scale(&self, r: &R) -> Self {
        Quaternion::new(
            self.w.clone() * r.clone(),
            self.x.clone() * r.clone(),
            self.y.clone() * r.clone(),
            self.z.clone() * r.clone(),
        )
    }

    pub fn components(&self) -> [R; 4] {
        [
            self.w.clone(),
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
        ]
    }

    /// Splits q = z + w·j into the complex pair (z, w).
    pub fn symplectic_parts(&self) -> (Complex<R>, Complex<R>) {
        (
            Complex::new(self.w.clone(), self.x.clone()),
            Complex::new(self.y.clone(), self.z.clone()),
        )
    }

    pub fn from_symplectic_parts(z: &Complex<R>, w: &Complex<R>) -> Self {
        Quaternion::new(z.re.clone(), z.im.clone(), w.re.clone(), w.im.clone())
    }

    pub fn map<S: RealScalar>(&self, f: impl Fn(&R) -> S) -> Quaternion<S> {
        Quaternion::new(f(&self.w), f(&self.x), f(&self.y), f(&self.z))
    }
}

impl<R: RealScalar> Add for Quaternion<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<R: RealScalar> Sub for Quaternion<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<R: RealScalar> Mul for Quaternion<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.w, o.x, o.y, o.z);
        Quaternion::new(
            a1.clone() * a2.clone()
                - b1.clone() * b2.clone()
                - c1.clone() * c2.clone()
                - d1.clone() * d2.clone(),
            a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone()
                - d1.clone() * c2.clone(),
            a1.clone() * c2.clone() - b1.clone() * d2.clone()
                + c1.clone() * a2.clone()
                + d1.clone() * b2.clone(),
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl<R: RealScalar> Neg for Quaternion<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<R: RealScalar> Scalar for Quaternion<R> {
    type Real = R;
    const RING: Ring = match R::RING {
        Ring::Float64 => Ring::QuaternionFloat64,
        Ring::RationalSqrt2 => Ring::QuaternionSqrt2,
        _ => Ring::Quaternion,
    };
    const EXACT: bool = R::EXACT;

    fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }
    fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
    fn conj(&self) -> Self {
        Quaternion::new(
            self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sq().inv()?;
        Some(self.conj().scale(&n))
    }
    fn from_real(r: R) -> Self {
        Quaternion::new(r, R::zero(), R::zero(), R::zero())
    }
    fn re(&self) -> R {
        self.w.clone()
    }
    fn real_parts(&self) -> alloc::vec::Vec<R> {
        self.components().to_vec()
    }
    fn magnitude(&self) -> f64 {
        let n = self.norm_sq().to_f64();
        if n == 0.0 {
            return 0.0;
        }
        // scale into [0.25, 1] before the unit-range square root
        let mut s = 1.0;
        let mut v = n;
        while v > 1.0 {
            v /= 4.0;
            s *= 2.0;
        }
        while v < 0.25 {
            v *= 4.0;
            s /= 2.0;
        }
        s * crate::complex::sqrt_unit(v)
    }

    /// Inverse via the complex detour X ↦ θ_H(X).
    fn matrix_inverse(m: &Matrix<Self>) -> Option<Matrix<Self>> {
        let theta = embeddings::theta_h(m);
        let inv = Complex::<R>::matrix_inverse(&theta)?;
        embeddings::extract_theta_h(&inv).ok()
    }
}

impl ToFloat for Quaternion<Q> {
    type Float = Quaternion<f64>;
    fn to_float(&self) -> Quaternion<f64> {
        self.map(|c| c.to_f64())
    }
}

impl ToFloat for Quaternion<f64> {
    type Float = Quaternion<f64>;
    fn to_float(&self) -> Quaternion<f64> {
        self.clone()
    }
}

impl From<Complex<Q>> for Quaternion<Q> {
    fn from(c: Complex<Q>) -> Self {
        Quaternion::new(c.re, c.im, Q::zero(), Q::zero())
    }
}
