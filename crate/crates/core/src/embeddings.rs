//! Structured embeddings θ_C,I, θ_C,II, θ_H and Λ, with membership tests and inverses.

use crate::complex::Complex;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::named;
use crate::quaternion::Quaternion;
use crate::scalar::{RealScalar, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmbeddingKind {
    /// M(n,C) → M(2n,R), entrywise z = x+iy ↦ [[x,y],[−y,x]].
    ThetaCI,
    /// M(n,C) → M(2n,R), Y+iZ ↦ [[Y,−Z],[Z,Y]].
    ThetaCII,
    /// M(n,H) → M(2n,C), Z+Wj ↦ [[Z,W],[−W̄,Z̄]].
    ThetaH,
    /// M(4,R) → M(8,R), blocks alternately multiples of I₂ and σ_z.
    Lambda32,
}

impl EmbeddingKind {
    pub fn name(self) -> &'static str {
        match self {
            EmbeddingKind::ThetaCI => "theta_C_I",
            EmbeddingKind::ThetaCII => "theta_C_II",
            EmbeddingKind::ThetaH => "theta_H",
            EmbeddingKind::Lambda32 => "lambda_32",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::ThetaCI, Self::ThetaCII, Self::ThetaH, Self::Lambda32]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

fn even_square<T: Scalar>(y: &Matrix<T>) -> bool {
    y.is_square() && y.rows().is_multiple_of(2)
}

pub fn theta_c1<R: RealScalar>(x: &Matrix<Complex<R>>) -> Matrix<R> {
    Matrix::from_fn(2 * x.rows(), 2 * x.cols(), |r, c| {
        let z = x.get(r / 2, c / 2);
        match (r % 2, c % 2) {
            (0, 0) | (1, 1) => z.re.clone(),
            (0, 1) => z.im.clone(),
            _ => -z.im.clone(),
        }
    })
}

/// Image of θ_C,I = commutant of J̃_{2n}.
pub fn is_theta_c1<R: RealScalar>(y: &Matrix<R>) -> bool {
    if !even_square(y) {
        return false;
    }
    let jt = named::j_tilde::<R>(y.rows());
    y * &jt == &jt * y
}

pub fn extract_theta_c1<R: RealScalar>(y: &Matrix<R>) -> Result<Matrix<Complex<R>>, Error> {
    if !is_theta_c1(y) {
        return Err(Error::NotInImage(EmbeddingKind::ThetaCI.name()));
    }
    Ok(Matrix::from_fn(y.rows() / 2, y.cols() / 2, |i, j| {
        Complex::new(y.get(2 * i, 2 * j).clone(), y.get(2 * i, 2 * j + 1).clone())
    }))
}

pub fn theta_c2<R: RealScalar>(x: &Matrix<Complex<R>>) -> Matrix<R> {
    let (n, m) = x.shape();
    Matrix::from_fn(2 * n, 2 * m, |r, c| {
        let z = x.get(r % n, c % m);
        match (r < n, c < m) {
            (true, true) | (false, false) => z.re.clone(),
            (true, false) => -z.im.clone(),
            (false, true) => z.im.clone(),
        }
    })
}

/// Image of θ_C,II = commutant of J_{2n}.
pub fn is_theta_c2<R: RealScalar>(y: &Matrix<R>) -> bool {
    if !even_square(y) {
        return false;
    }
    let j = named::j_matrix::<R>(y.rows());
    y * &j == &j * y
}

pub fn extract_theta_c2<R: RealScalar>(y: &Matrix<R>) -> Result<Matrix<Complex<R>>, Error> {
    if !is_theta_c2(y) {
        return Err(Error::NotInImage(EmbeddingKind::ThetaCII.name()));
    }
    let n = y.rows() / 2;
    Ok(Matrix::from_fn(n, n, |i, j| {
        Complex::new(y.get(i, j).clone(), y.get(n + i, j).clone())
    }))
}

pub fn theta_h<R: RealScalar>(x: &Matrix<Quaternion<R>>) -> Matrix<Complex<R>> {
    let (n, m) = x.shape();
    Matrix::from_fn(2 * n, 2 * m, |r, c| {
        let (z, w) = x.get(r % n, c % m).symplectic_parts();
        match (r < n, c < m) {
            (true, true) => z,
            (true, false) => w,
            (false, true) => -w.conj(),
            (false, false) => z.conj(),
        }
    })
}

/// Image of θ_H: y·J_{2n} = J_{2n}·ȳ, equivalently y* = J⁻¹yᵀJ.
pub fn is_theta_h<R: RealScalar>(y: &Matrix<Complex<R>>) -> bool {
    if !even_square(y) {
        return false;
    }
    let j = named::j_matrix::<Complex<R>>(y.rows());
    y * &j == &j * &y.entrywise_conj()
}

pub fn extract_theta_h<R: RealScalar>(
    y: &Matrix<Complex<R>>,
) -> Result<Matrix<Quaternion<R>>, Error> {
    if !is_theta_h(y) {
        return Err(Error::NotInImage(EmbeddingKind::ThetaH.name()));
    }
    let n = y.rows() / 2;
    Ok(Matrix::from_fn(n, n, |i, j| {
        Quaternion::from_symplectic_parts(y.get(i, j), y.get(i, n + j))
    }))
}

/// Whether block (a,b) of Λ carries σ_z (otherwise I₂).
fn lambda_uses_sigma_z(a: usize, b: usize) -> bool {
    let class = |i: usize| i == 1 || i == 2;
    class(a) != class(b)
}

pub fn lambda32<R: RealScalar>(z: &Matrix<R>) -> Result<Matrix<R>, Error> {
    if z.shape() != (4, 4) {
        return Err(Error::ShapeMismatch {
            op: "lambda32",
            left: z.shape(),
            right: (4, 4),
        });
    }
    Ok(Matrix::from_fn(8, 8, |r, c| {
        let (a, b, i, j) = (r / 2, c / 2, r % 2, c % 2);
        if i != j {
            return R::zero();
        }
        let v = z.get(a, b).clone();
        if i == 1 && lambda_uses_sigma_z(a, b) {
            -v
        } else {
            v
        }
    }))
}

pub fn is_lambda32<R: RealScalar>(y: &Matrix<R>) -> bool {
    y.shape() == (8, 8)
        && extract_lambda_unchecked(y)
            .and_then(|z| lambda32(&z))
            .is_ok_and(|back| &back == y)
}

fn extract_lambda_unchecked<R: RealScalar>(y: &Matrix<R>) -> Result<Matrix<R>, Error> {
    Ok(Matrix::from_fn(4, 4, |a, b| y.get(2 * a, 2 * b).clone()))
}

pub fn extract_lambda32<R: RealScalar>(y: &Matrix<R>) -> Result<Matrix<R>, Error> {
    if !is_lambda32(y) {
        return Err(Error::NotInImage(EmbeddingKind::Lambda32.name()));
    }
    extract_lambda_unchecked(y)
}

/// The θ_H determinant of a quaternionic matrix (Def. of SL(n,H)).
pub fn quaternionic_determinant<R: RealScalar>(x: &Matrix<Quaternion<R>>) -> Result<R, Error> {
    Ok(theta_h(x).determinant()?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::kron;
    use crate::scalar::{q, qi, Q};
    use alloc::vec::Vec;
    use proptest::prelude::*;

    type C = Complex<Q>;
    type H = Quaternion<Q>;

    fn small_q() -> impl Strategy<Value = Q> {
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| q(n, d))
    }
    fn cmat(n: usize) -> impl Strategy<Value = Matrix<C>> {
        proptest::collection::vec((small_q(), small_q()), n * n).prop_map(move |v| {
            Matrix::new(
                n,
                n,
                v.into_iter().map(|(a, b)| Complex::new(a, b)).collect(),
            )
            .unwrap()
        })
    }
    fn hmat(n: usize) -> impl Strategy<Value = Matrix<H>> {
        proptest::collection::vec(proptest::array::uniform4(small_q()), n * n).prop_map(move |v| {
            let data: Vec<H> = v
                .into_iter()
                .map(|[a, b, c, d]| Quaternion::new(a, b, c, d))
                .collect();
            Matrix::new(n, n, data).unwrap()
        })
    }
    fn rmat(n: usize) -> impl Strategy<Value = Matrix<Q>> {
        proptest::collection::vec(small_q(), n * n).prop_map(move |v| Matrix::new(n, n, v).unwrap())
    }

    #[test]
    fn scalar_examples() {
        let i = Matrix::new(1, 1, alloc::vec![C::i()]).unwrap();
        assert_eq!(theta_c1(&i), named::j2::<Q>());
        let j = Matrix::new(1, 1, alloc::vec![H::j()]).unwrap();
        assert_eq!(theta_h(&j), named::j2::<C>());
        assert!(theta_h(&Matrix::<H>::identity(3)).is_identity());
        assert!(lambda32(&Matrix::<Q>::identity(4)).unwrap().is_identity());
    }

    #[test]
    fn theta_c1_membership_examples() {
        assert!(is_theta_c1(&named::j_tilde::<Q>(4)));
        // σ_x⊗I₂ = θ_C,I(σ_x) is in the image; I₂⊗σ_x is not.
        assert!(is_theta_c1(&kron(
            &named::sigma_x::<Q>(),
            &named::identity(2)
        )));
        assert!(!is_theta_c1(&kron(
            &named::identity::<Q>(2),
            &named::sigma_x()
        )));
        assert_eq!(
            extract_theta_c1(&Matrix::<Q>::identity(6)).unwrap(),
            Matrix::<C>::identity(3)
        );
    }

    #[test]
    fn lambda_generic_z() {
        let z = Matrix::<Q>::from_fn(4, 4, |i, j| qi((4 * i + j + 1) as i64));
        let x = lambda32(&z).unwrap();
        assert!(is_lambda32(&x));
        assert_eq!(*x.get(1, 3), qi(-2));
        assert_eq!(*x.get(1, 7), qi(4));
        assert!(!is_lambda32(&named::k_matrix::<Q>(8)));
        assert!(lambda32(&Matrix::<Q>::identity(3)).is_err());
    }

    proptest! {
        #[test]
        fn theta_c1_hom(a in cmat(2), b in cmat(2)) {
            prop_assert_eq!(theta_c1(&(&a * &b)), &theta_c1(&a) * &theta_c1(&b));
            prop_assert_eq!(theta_c1(&a.conj_transpose()), theta_c1(&a).transpose());
            prop_assert!(is_theta_c1(&theta_c1(&a)));
            prop_assert_eq!(extract_theta_c1(&theta_c1(&a)).unwrap(), a);
        }

        #[test]
        fn theta_c2_hom(a in cmat(2), b in cmat(2)) {
            prop_assert_eq!(theta_c2(&(&a * &b)), &theta_c2(&a) * &theta_c2(&b));
            prop_assert_eq!(theta_c2(&a.conj_transpose()), theta_c2(&a).transpose());
            prop_assert!(is_theta_c2(&theta_c2(&a)));
            prop_assert_eq!(extract_theta_c2(&theta_c2(&a)).unwrap(), a);
        }

        #[test]
        fn theta_h_hom(a in hmat(2), b in hmat(2)) {
            prop_assert_eq!(theta_h(&(&a * &b)), &theta_h(&a) * &theta_h(&b));
            prop_assert_eq!(theta_h(&a.conj_transpose()), theta_h(&a).conj_transpose());
            prop_assert!(is_theta_h(&theta_h(&a)));
            prop_assert_eq!(extract_theta_h(&theta_h(&a)).unwrap(), a);
        }

        #[test]
        fn lambda_hom(a in rmat(4), b in rmat(4)) {
            let la = lambda32(&a).unwrap();
            prop_assert_eq!(lambda32(&(&a * &b)).unwrap(), &la * &lambda32(&b).unwrap());
            prop_assert_eq!(lambda32(&a.transpose()).unwrap(), la.transpose());
            prop_assert_eq!(extract_lambda32(&la).unwrap(), a);
        }

        #[test]
        fn theta_membership_rejects_perturbations(a in cmat(2), r in 0usize..4, c in 0usize..4) {
            let y = theta_c1(&a);
            let bumped = y.with_entry(r, c, y.get(r, c).clone() + qi(1));
            prop_assert!(!is_theta_c1(&bumped));
            prop_assert!(extract_theta_c1(&bumped).is_err());
        }

        #[test]
        fn extract_then_embed_on_images(h in hmat(2)) {
            let y = theta_h(&h);
            prop_assert_eq!(theta_h(&extract_theta_h(&y).unwrap()), y);
        }
    }
}
