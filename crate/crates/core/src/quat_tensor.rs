//! H⊗H ≅ M(4,R): the matrices M_{p⊗q} of x ↦ p·x·q̄ in the basis {1,i,j,k}.

use alloc::vec::Vec;

use crate::error::Error;
use crate::matrix::Matrix;
pub use crate::quaternion::Quaternion;
use crate::scalar::{QSqrt2, RealScalar, Scalar, Q};

/// Matrix of x ↦ p x q̄; column c holds the image of the c-th basis quaternion.
pub fn m_tensor<R: RealScalar>(p: &Quaternion<R>, q: &Quaternion<R>) -> Matrix<R> {
    let qbar = q.conj();
    let images: Vec<[R; 4]> = Quaternion::<R>::basis()
        .into_iter()
        .map(|e| (p.clone() * e * qbar.clone()).components())
        .collect();
    Matrix::from_fn(4, 4, |r, c| images[c][r].clone())
}

/// M_{1⊗q}.
pub fn m_right<R: RealScalar>(q: &Quaternion<R>) -> Matrix<R> {
    m_tensor(&Quaternion::one(), q)
}

/// M_{p⊗1}.
pub fn m_left<R: RealScalar>(p: &Quaternion<R>) -> Matrix<R> {
    m_tensor(p, &Quaternion::one())
}

/// The 16 matrices M_{e_x⊗e_y}, x outer and y inner, over {1,i,j,k}.
pub fn m_tensor_basis<R: RealScalar>() -> Vec<Matrix<R>> {
    let basis = Quaternion::<R>::basis();
    basis
        .iter()
        .flat_map(|p| basis.iter().map(move |q| m_tensor(p, q)))
        .collect()
}

/// Unit q with q̄·a·q = b for unit imaginary a, b.
///
/// With r = 1 − b·a one has r·a = b·r and |r|² = 2(1 + a·b), so q = r̄/|r|
/// whenever a ≠ −b. For a = −b any unit imaginary axis orthogonal to a works.
pub fn conjugating_quaternion(
    a: &Quaternion<Q>,
    b: &Quaternion<Q>,
) -> Result<Quaternion<QSqrt2>, Error> {
    for v in [a, b] {
        if !v.is_pure() || v.norm_sq() != <Q as Scalar>::one() {
            return Err(Error::NotUnitImaginary);
        }
    }
    let dot = a.x.clone() * b.x.clone() + a.y.clone() * b.y.clone() + a.z.clone() * b.z.clone();
    let lift = |h: &Quaternion<Q>| h.map(|c| QSqrt2::rational(c.clone()));
    if (dot.clone() + <Q as Scalar>::one()).is_zero() {
        let axis = [Quaternion::i(), Quaternion::j(), Quaternion::k()]
            .into_iter()
            .find(|e: &Quaternion<Q>| {
                (a.x.clone() * e.x.clone() + a.y.clone() * e.y.clone() + a.z.clone() * e.z.clone())
                    .is_zero()
            });
        // an orthogonal axis among i, j, k exists when a has a zero component
        let u = match axis {
            Some(u) => u,
            None => {
                let c = Quaternion::new(
                    <Q as Scalar>::zero(),
                    a.y.clone(),
                    -a.x.clone(),
                    <Q as Scalar>::zero(),
                );
                let n = c.norm_sq();
                return unit_from(&lift(&c), &n).ok_or(Error::NoConjugatingQuaternion);
            }
        };
        return Ok(lift(&u));
    }
    let r = Quaternion::one() - b.clone() * a.clone();
    let norm_sq = (<Q as Scalar>::one() + dot) * Q::from_integer(2.into());
    unit_from(&lift(&r.conj()), &norm_sq).ok_or(Error::NoConjugatingQuaternion)
}

fn unit_from(v: &Quaternion<QSqrt2>, norm_sq: &Q) -> Option<Quaternion<QSqrt2>> {
    let norm = QSqrt2::sqrt_of_rational(norm_sq)?;
    Some(v.scale(&norm.inv()?))
}
