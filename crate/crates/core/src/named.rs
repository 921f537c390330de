//! Named constant matrices: Pauli matrices, J_{2n}, J̃_{2n}, K_{2l}, I_{p,q}.

use crate::complex::Complex;
use crate::matrix::{kron, Matrix};
use crate::scalar::{RealScalar, Scalar};

pub fn identity<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::identity(n)
}

pub fn sigma_x<T: Scalar>() -> Matrix<T> {
    Matrix::from_ints(&[[0, 1], [1, 0]])
}

pub fn sigma_z<T: Scalar>() -> Matrix<T> {
    Matrix::from_ints(&[[1, 0], [0, -1]])
}

/// σ_y = [[0,−i],[i,0]]; note iσ_y = J₂.
pub fn sigma_y<R: RealScalar>() -> Matrix<Complex<R>> {
    let i = Complex::<R>::i();
    Matrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 1) => -i.clone(),
        (1, 0) => i.clone(),
        _ => Complex::zero(),
    })
}

/// J₂ = [[0,1],[−1,0]].
pub fn j2<T: Scalar>() -> Matrix<T> {
    Matrix::from_ints(&[[0, 1], [-1, 0]])
}

/// J_{2n} = [[0, I_n],[−I_n, 0]].
pub fn j_matrix<T: Scalar>(size: usize) -> Matrix<T> {
    assert!(size.is_multiple_of(2), "J needs an even size");
    kron(&j2(), &Matrix::identity(size / 2))
}

/// J̃_{2n} = J₂ ⊕ … ⊕ J₂.
pub fn j_tilde<T: Scalar>(size: usize) -> Matrix<T> {
    assert!(size.is_multiple_of(2), "J̃ needs an even size");
    kron(&Matrix::identity(size / 2), &j2())
}

/// K_{2l} = [[0, I_l],[I_l, 0]].
pub fn k_matrix<T: Scalar>(size: usize) -> Matrix<T> {
    assert!(size.is_multiple_of(2), "K needs an even size");
    kron(&sigma_x(), &Matrix::identity(size / 2))
}

/// I_{p,q} = diag(I_p, −I_q).
pub fn i_pq<T: Scalar>(p: usize, q: usize) -> Matrix<T> {
    Matrix::from_fn(p + q, p + q, |i, j| match (i == j, i < p) {
        (false, _) => T::zero(),
        (true, true) => T::one(),
        (true, false) => -T::one(),
    })
}

/// Standard basis column e_i (0-based) of length n.
pub fn basis_vector<T: Scalar>(n: usize, i: usize) -> Matrix<T> {
    Matrix::from_fn(n, 1, |r, _| if r == i { T::one() } else { T::zero() })
}

/// e_a e_bᵀ in M(n) (0-based indices).
pub fn unit_matrix<T: Scalar>(n: usize, a: usize, b: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |r, c| {
        if r == a && c == b {
            T::one()
        } else {
            T::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn pauli_algebra() {
        let (x, z) = (sigma_x::<Q>(), sigma_z::<Q>());
        assert!((&x * &x).is_identity());
        assert!(x.anticommutator(&z).is_zero());
        let y = sigma_y::<Q>();
        let iy = y.scale(&Complex::i());
        assert_eq!(iy, j2::<Complex<Q>>());
    }

    #[test]
    fn j_and_k_shapes() {
        let j4 = j_matrix::<Q>(4);
        assert_eq!(&j4 * &j4, -&Matrix::identity(4));
        assert_eq!(
            j_tilde::<Q>(4),
            Matrix::from_ints(&[[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
        );
        assert_eq!(
            k_matrix::<Q>(4),
            Matrix::from_ints(&[[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
        );
        assert_eq!(
            i_pq::<Q>(1, 2),
            Matrix::from_ints(&[[1, 0, 0], [0, -1, 0], [0, 0, -1]])
        );
    }
}
