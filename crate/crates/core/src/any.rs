//! Ring-tagged matrices, for callers that only learn the ring at run time.

use crate::complex::Complex;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::quaternion::Quaternion;
use crate::scalar::{QSqrt2, Ring, Scalar, Q};

#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Rational(Matrix<Q>),
    RationalSqrt2(Matrix<QSqrt2>),
    Complex(Matrix<Complex<Q>>),
    Quaternion(Matrix<Quaternion<Q>>),
    Float64(Matrix<f64>),
}

impl AnyMatrix {
    pub fn ring(&self) -> Ring {
        match self {
            AnyMatrix::Rational(_) => Ring::Rational,
            AnyMatrix::RationalSqrt2(_) => Ring::RationalSqrt2,
            AnyMatrix::Complex(_) => Ring::Complex,
            AnyMatrix::Quaternion(_) => Ring::Quaternion,
            AnyMatrix::Float64(_) => Ring::Float64,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Rational(m) => m.shape(),
            AnyMatrix::RationalSqrt2(m) => m.shape(),
            AnyMatrix::Complex(m) => m.shape(),
            AnyMatrix::Quaternion(m) => m.shape(),
            AnyMatrix::Float64(m) => m.shape(),
        }
    }

    /// Canonical promotion along rational ↪ complex ↪ quaternion (and rational ↪ Q[√2]).
    pub fn promote(&self, target: Ring) -> Result<AnyMatrix, Error> {
        let reject = || Error::RingMismatch {
            expected: target,
            found: self.ring(),
        };
        if !self.ring().embeds_into(target) {
            return Err(reject());
        }
        Ok(match (self, target) {
            (m, t) if m.ring() == t => m.clone(),
            (AnyMatrix::Rational(m), Ring::Complex) => {
                AnyMatrix::Complex(m.map(|x| Complex::from_real(x.clone())))
            }
            (AnyMatrix::Rational(m), Ring::Quaternion) => {
                AnyMatrix::Quaternion(m.map(|x| Quaternion::from_real(x.clone())))
            }
            (AnyMatrix::Rational(m), Ring::RationalSqrt2) => {
                AnyMatrix::RationalSqrt2(m.map(|x| QSqrt2::from(x.clone())))
            }
            (AnyMatrix::Complex(m), Ring::Quaternion) => {
                AnyMatrix::Quaternion(m.map(|z| Quaternion::from(z.clone())))
            }
            _ => return Err(reject()),
        })
    }

    /// Product after promoting both sides to a common ring.
    pub fn mul(&self, other: &AnyMatrix) -> Result<AnyMatrix, Error> {
        let target = common_ring(self.ring(), other.ring())?;
        Ok(match (self.promote(target)?, other.promote(target)?) {
            (AnyMatrix::Rational(a), AnyMatrix::Rational(b)) => {
                AnyMatrix::Rational(a.checked_mul(&b)?)
            }
            (AnyMatrix::RationalSqrt2(a), AnyMatrix::RationalSqrt2(b)) => {
                AnyMatrix::RationalSqrt2(a.checked_mul(&b)?)
            }
            (AnyMatrix::Complex(a), AnyMatrix::Complex(b)) => {
                AnyMatrix::Complex(a.checked_mul(&b)?)
            }
            (AnyMatrix::Quaternion(a), AnyMatrix::Quaternion(b)) => {
                AnyMatrix::Quaternion(a.checked_mul(&b)?)
            }
            (AnyMatrix::Float64(a), AnyMatrix::Float64(b)) => {
                AnyMatrix::Float64(a.checked_mul(&b)?)
            }
            _ => unreachable!("promotion yields equal rings"),
        })
    }

    pub fn as_rational(&self) -> Result<&Matrix<Q>, Error> {
        match self {
            AnyMatrix::Rational(m) => Ok(m),
            other => Err(Error::RingMismatch {
                expected: Ring::Rational,
                found: other.ring(),
            }),
        }
    }

    pub fn as_complex(&self) -> Result<Matrix<Complex<Q>>, Error> {
        match self.promote(Ring::Complex)? {
            AnyMatrix::Complex(m) => Ok(m),
            _ => unreachable!(),
        }
    }

    pub fn as_quaternion(&self) -> Result<Matrix<Quaternion<Q>>, Error> {
        match self.promote(Ring::Quaternion)? {
            AnyMatrix::Quaternion(m) => Ok(m),
            _ => unreachable!(),
        }
    }

    /// Float view of any ring without a complex or quaternion part.
    pub fn as_float(&self) -> Result<Matrix<f64>, Error> {
        match self {
            AnyMatrix::Float64(m) => Ok(m.clone()),
            AnyMatrix::Rational(m) => Ok(m.to_float()),
            AnyMatrix::RationalSqrt2(m) => Ok(m.to_float()),
            other => Err(Error::RingMismatch {
                expected: Ring::Float64,
                found: other.ring(),
            }),
        }
    }
}

fn common_ring(a: Ring, b: Ring) -> Result<Ring, Error> {
    if a.embeds_into(b) {
        Ok(b)
    } else if b.embeds_into(a) {
        Ok(a)
    } else {
        Err(Error::RingMismatch {
            expected: a,
            found: b,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn mixed_products_promote() {
        let r = AnyMatrix::Rational(named::sigma_x());
        let c = AnyMatrix::Complex(named::sigma_y());
        let p = r.mul(&c).unwrap();
        assert_eq!(p.ring(), Ring::Complex);
        let f = AnyMatrix::Float64(Matrix::identity(2));
        assert!(matches!(r.mul(&f), Err(Error::RingMismatch { .. })));
        let h = AnyMatrix::Quaternion(Matrix::identity(2));
        assert!(c.mul(&h).is_ok());
        assert!(h.promote(Ring::Complex).is_err());
    }
}
