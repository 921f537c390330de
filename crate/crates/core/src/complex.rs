//! Complex numbers over a real scalar field.

use core::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Field, RealScalar, Ring, Scalar, ToFloat, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Complex<R> {
    pub re: R,
    pub im: R,
}

impl<R: RealScalar> Complex<R> {
    pub fn new(re: R, im: R) -> Self {
        Complex { re, im }
    }

    pub fn i() -> Self {
        Complex {
            re: R::zero(),
            im: R::one(),
        }
    }

    pub fn norm_sq(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

impl<R: RealScalar> Add for Complex<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Complex {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl<R: RealScalar> Sub for Complex<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Complex {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl<R: RealScalar> Mul for Complex<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Complex {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<R: RealScalar> Neg for Complex<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Complex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<R: RealScalar> Scalar for Complex<R> {
    type Real = R;
    const RING: Ring = match R::RING {
        Ring::Float64 => Ring::ComplexFloat64,
        _ => Ring::Complex,
    };
    const EXACT: bool = R::EXACT;

    fn zero() -> Self {
        Complex {
            re: R::zero(),
            im: R::zero(),
        }
    }
    fn one() -> Self {
        Complex {
            re: R::one(),
            im: R::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sq().inv()?;
        Some(Complex {
            re: self.re.clone() * n.clone(),
            im: -(self.im.clone() * n),
        })
    }
    fn from_real(r: R) -> Self {
        Complex {
            re: r,
            im: R::zero(),
        }
    }
    fn re(&self) -> R {
        self.re.clone()
    }
    fn real_parts(&self) -> alloc::vec::Vec<R> {
        alloc::vec![self.re.clone(), self.im.clone()]
    }
    fn magnitude(&self) -> f64 {
        let (a, b) = (self.re.to_f64(), self.im.to_f64());
        hypot(a, b)
    }
}

impl<R: RealScalar> Field for Complex<R> {}

impl ToFloat for Complex<Q> {
    type Float = Complex<f64>;
    fn to_float(&self) -> Complex<f64> {
        Complex {
            re: self.re.to_f64(),
            im: self.im.to_f64(),
        }
    }
}

impl ToFloat for Complex<f64> {
    type Float = Complex<f64>;
    fn to_float(&self) -> Complex<f64> {
        self.clone()
    }
}

/// sqrt(a² + b²) without std; Newton iteration on the scaled value.
pub(crate) fn hypot(a: f64, b: f64) -> f64 {
    let (a, b) = (a.abs(), b.abs());
    let m = if a > b { a } else { b };
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    let (x, y) = (a / m, b / m);
    m * sqrt_unit(x * x + y * y)
}

/// sqrt for v in [0, 2]; a handful of Newton steps reaches full precision.
pub(crate) fn sqrt_unit(v: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    let mut r = if v < 0.5 { 0.5 } else { 1.0 };
    for _ in 0..60 {
        let next = 0.5 * (r + v / r);
        if next == r {
            break;
        }
        r = next;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn field_ops() {
        let z = Complex::new(q(3, 2), qi(-2));
        let w = Complex::new(qi(1), q(1, 3));
        assert_eq!(z.clone() * w.clone(), w.clone() * z.clone());
        assert_eq!(z.clone() * z.inv().unwrap(), Complex::one());
        assert_eq!(Complex::<Q>::i() * Complex::i(), -Complex::one());
    }

    #[test]
    fn hypot_is_accurate() {
        assert!((hypot(3.0, 4.0) - 5.0).abs() < 1e-15);
        assert!((hypot(1e-3, 0.0) - 1e-3).abs() < 1e-18);
    }
}
