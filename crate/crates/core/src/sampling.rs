//! Exact random elements: small rationals, algebra elements, Cayley transforms and
//! classical-group elements built from elementary factors.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::any::AnyMatrix;
use crate::clifford::CliffordRep;
use crate::complex::Complex;
use crate::embeddings::{extract_theta_h, theta_h};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::named;
use crate::quat_tensor::m_tensor;
use crate::quaternion::Quaternion;
use crate::scalar::{RealScalar, Scalar, Q};
use crate::spin_catalog::{
    embed_classical, AnyEntry, CatalogEntry, ClassicalElement, ClassicalGroup,
};

/// Attempts before giving up on a nonsingular Cayley denominator.
const CAYLEY_ATTEMPTS: usize = 32;

/// n/d with |n| ≤ `max_num` and 1 ≤ d ≤ `max_den`.
pub fn random_rational<G: Rng + ?Sized>(rng: &mut G, max_num: i64, max_den: i64) -> Q {
    let n = rng.gen_range(-max_num..=max_num);
    let d = rng.gen_range(1..=max_den);
    <Q as RealScalar>::from_ratio(n, d)
}

fn small<G: Rng + ?Sized>(rng: &mut G) -> Q {
    random_rational(rng, 3, 4)
}

fn nonzero_small<G: Rng + ?Sized>(rng: &mut G) -> Q {
    loop {
        let v = small(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_rational_matrix<G: Rng + ?Sized>(rng: &mut G, rows: usize, cols: usize) -> Matrix<Q> {
    Matrix::from_fn(rows, cols, |_, _| small(rng))
}

/// Σ cᵢBᵢ with small random rational cᵢ.
pub fn random_real_combination<T: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    basis: &[Matrix<T>],
) -> Matrix<T>
where
    T::Real: From<Q>,
{
    let (r, c) = basis[0].shape();
    basis.iter().fold(Matrix::zeros(r, c), |acc, b| {
        &acc + &b.scale_real(&T::Real::from(small(rng)))
    })
}

/// A random element of the whole algebra, as a combination of all monomials.
pub fn random_algebra_element<T: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    rep: &CliffordRep<T>,
) -> Matrix<T>
where
    T::Real: From<Q>,
{
    random_real_combination(rng, &rep.monomials())
}

pub fn random_bivector<T: Scalar, G: Rng + ?Sized>(rng: &mut G, rep: &CliffordRep<T>) -> Matrix<T>
where
    T::Real: From<Q>,
{
    random_real_combination(rng, &rep.bivector_basis())
}

/// Monomials y with grade(y) = y and yᶜᶜ = −y: a basis of the solutions of the
/// linearized conditions (i)–(ii), since monomials are eigenvectors of both forms.
pub fn even_skew_basis<T: Scalar>(rep: &CliffordRep<T>) -> Result<Vec<Matrix<T>>, Error> {
    let mut out = Vec::new();
    for m in rep.monomials() {
        if rep.apply_grade(&m)? == m && rep.apply_conjugation(&m)? == -&m {
            out.push(m);
        }
    }
    Ok(out)
}

/// (I + y)(I − y)⁻¹.
pub fn cayley<T: Scalar>(y: &Matrix<T>) -> Result<Matrix<T>, Error> {
    let id = Matrix::identity(y.rows());
    Ok(&(&id + y) * &(&id - y).inverse()?)
}

fn cayley_of_random<T: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    basis: &[Matrix<T>],
) -> Result<Matrix<T>, Error>
where
    T::Real: From<Q>,
{
    for _ in 0..CAYLEY_ATTEMPTS {
        match cayley(&random_real_combination(rng, basis)) {
            Err(Error::Singular) => continue,
            other => return other,
        }
    }
    Err(Error::Singular)
}

/// A product of Cayley transforms of random elements of `basis`, times ±1.
pub fn random_cayley_product<T: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    basis: &[Matrix<T>],
    factors: usize,
) -> Result<Matrix<T>, Error>
where
    T::Real: From<Q>,
{
    let n = basis[0].rows();
    let mut out = Matrix::identity(n);
    for _ in 0..factors {
        out = &out * &cayley_of_random(rng, basis)?;
    }
    if rng.gen_bool(0.5) {
        out = -out;
    }
    Ok(out)
}

/// An exact element satisfying conditions (i) and (ii), built without reference to bivectors.
pub fn random_condition_i_ii<T: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    rep: &CliffordRep<T>,
) -> Result<Matrix<T>, Error>
where
    T::Real: From<Q>,
{
    random_cayley_product(rng, &even_skew_basis(rep)?, 2)
}

/// Cayley transforms of random bivectors, multiplied together.
pub fn random_bivector_cayley<T: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    rep: &CliffordRep<T>,
) -> Result<Matrix<T>, Error>
where
    T::Real: From<Q>,
{
    random_cayley_product(rng, &rep.bivector_basis(), 2)
}

fn sl2_elementary<T: Scalar>(upper: bool, t: T) -> Matrix<T> {
    let mut m = Matrix::identity(2);
    m = if upper {
        m.with_entry(0, 1, t)
    } else {
        m.with_entry(1, 0, t)
    };
    m
}

fn random_sl2<T: Scalar, G: Rng + ?Sized>(
    rng: &mut G,
    mut draw: impl FnMut(&mut G) -> T,
    mut draw_unit: impl FnMut(&mut G) -> T,
) -> Matrix<T> {
    let a = draw_unit(rng);
    let d = Matrix::diagonal(&[a.clone(), a.inv().expect("nonzero")]);
    let u = sl2_elementary(true, draw(rng));
    let l = sl2_elementary(false, draw(rng));
    &(&u * &l) * &d
}

fn random_complex<G: Rng + ?Sized>(rng: &mut G) -> Complex<Q> {
    Complex::new(small(rng), small(rng))
}

fn random_quaternion<G: Rng + ?Sized>(rng: &mut G) -> Quaternion<Q> {
    Quaternion::new(small(rng), small(rng), small(rng), small(rng))
}

fn random_nonzero_quaternion<G: Rng + ?Sized>(rng: &mut G) -> Quaternion<Q> {
    loop {
        let h = random_quaternion(rng);
        if !h.is_zero() {
            return h;
        }
    }
}

/// A rational unit quaternion (1 + v)(1 − v)⁻¹ with v pure imaginary.
pub fn random_unit_quaternion<G: Rng + ?Sized>(rng: &mut G) -> Quaternion<Q> {
    let v = Quaternion::new(<Q as Scalar>::zero(), small(rng), small(rng), small(rng));
    (Quaternion::one() + v.clone()) * (Quaternion::one() - v).inv().expect("1 - v is never zero")
}

/// (1 + it)/(1 − it), a rational point on the unit circle.
fn random_phase<G: Rng + ?Sized>(rng: &mut G) -> Complex<Q> {
    let t = Complex::new(<Q as Scalar>::zero(), small(rng));
    (Complex::one() + t.clone()) * (Complex::one() - t).inv().expect("nonzero")
}

fn random_sl4r<G: Rng + ?Sized>(rng: &mut G) -> Matrix<Q> {
    let mut g = Matrix::<Q>::identity(4);
    for _ in 0..4 {
        let (i, j) = (rng.gen_range(0..4), rng.gen_range(0..4));
        if i == j {
            continue;
        }
        g = &g * &Matrix::identity(4).with_entry(i, j, small(rng));
    }
    let (i, j) = (rng.gen_range(0..4), rng.gen_range(0..4));
    if i != j {
        let a = nonzero_small(rng);
        let d = Matrix::identity(4).with_entry(i, i, a.clone()).with_entry(
            j,
            j,
            a.inv().expect("nonzero"),
        );
        g = &g * &d;
    }
    g
}

fn random_breve_sp4<G: Rng + ?Sized>(rng: &mut G) -> Result<Matrix<Q>, Error> {
    let mk = m_tensor(&Quaternion::<Q>::one(), &Quaternion::k());
    // M_{1⊗k}·W with W symmetric spans the breve Lie algebra
    let sym: Vec<Matrix<Q>> = (0..4)
        .flat_map(|a| (a..4).map(move |b| (a, b)))
        .map(|(a, b)| {
            let e = named::unit_matrix::<Q>(4, a, b);
            let w = if a == b { e } else { &e + &e.transpose() };
            &mk * &w
        })
        .collect();
    random_cayley_product(rng, &sym, 2)
}

/// An element of SU(2,2) (with respect to I₂,₂) from SU(2) blocks, real boosts and phases.
fn random_su22<G: Rng + ?Sized>(rng: &mut G) -> Matrix<Complex<Q>> {
    let su2 = |rng: &mut G| theta_h(&Matrix::from_fn(1, 1, |_, _| random_unit_quaternion(rng)));
    let mut g = Matrix::direct_sum(&[su2(rng), su2(rng)]);
    for (a, b) in [(0, 2), (1, 3), (0, 3)] {
        let t = <Q as RealScalar>::from_ratio(rng.gen_range(-2..=2), 3);
        let den = (<Q as Scalar>::one() - t.clone() * t.clone())
            .inv()
            .expect("|t| < 1");
        let ch = (<Q as Scalar>::one() + t.clone() * t.clone()) * den.clone();
        let sh = t.clone() * <Q as RealScalar>::from_ratio(2, 1) * den;
        let c = |x: &Q| Complex::from_real(x.clone());
        let boost = Matrix::identity(4)
            .with_entry(a, a, c(&ch))
            .with_entry(b, b, c(&ch))
            .with_entry(a, b, c(&sh))
            .with_entry(b, a, c(&sh));
        g = &g * &boost;
    }
    let ph = random_phase(rng);
    let phase =
        Matrix::identity(4)
            .with_entry(0, 0, ph.clone())
            .with_entry(2, 2, ph.inv().expect("unit"));
    &(&g * &phase) * &Matrix::direct_sum(&[su2(rng), su2(rng)])
}

fn random_sl2h<G: Rng + ?Sized>(rng: &mut G) -> Matrix<Quaternion<Q>> {
    let a = random_nonzero_quaternion(rng);
    let b = random_unit_quaternion(rng) * a.conj().inv().expect("nonzero");
    let d = Matrix::diagonal(&[a, b]);
    let u = sl2_elementary(true, random_quaternion(rng));
    let l = sl2_elementary(false, random_quaternion(rng));
    &(&u * &d) * &l
}

/// A random element of the entry's classical group, in that group's own ring.
pub fn random_classical<G: Rng + ?Sized>(
    rng: &mut G,
    entry: &AnyEntry,
) -> Result<ClassicalElement, Error> {
    Ok(match entry.classical_group() {
        ClassicalGroup::Sl2R => ClassicalElement::Real(random_sl2(rng, small, nonzero_small)),
        ClassicalGroup::Sl2C => ClassicalElement::Complex(random_sl2(rng, random_complex, |r| {
            Complex::new(nonzero_small(r), small(r))
        })),
        ClassicalGroup::Sl2RxSl2R => ClassicalElement::RealPair(
            random_sl2(rng, small, nonzero_small),
            random_sl2(rng, small, nonzero_small),
        ),
        ClassicalGroup::BreveSp4R => ClassicalElement::Real(random_breve_sp4(rng)?),
        ClassicalGroup::ThetaHConstrained => {
            let e = entry.as_complex()?;
            let x = random_bivector_cayley(rng, &e.rep)?;
            ClassicalElement::Quaternion(extract_theta_h(&x)?)
        }
        ClassicalGroup::Su22Conjugate => ClassicalElement::Complex(random_su22(rng)),
        ClassicalGroup::Sl2HBlock => ClassicalElement::Quaternion(random_sl2h(rng)),
        ClassicalGroup::Sl4RBlock => ClassicalElement::Real(random_sl4r(rng)),
    })
}

/// A random spin-group element: Cayley products of bivectors for p+q ≤ 5, the
/// classical parameterization for p+q = 6.
pub fn random_spin_element<G: Rng + ?Sized>(
    rng: &mut G,
    entry: &AnyEntry,
) -> Result<AnyMatrix, Error> {
    if entry.signature().dimension() >= 6 {
        let g = random_classical(rng, entry)?;
        return embed_classical(entry, &g);
    }
    Ok(match entry {
        AnyEntry::Real(e) => AnyMatrix::Rational(random_bivector_cayley(rng, &e.rep)?),
        AnyEntry::Complex(e) => AnyMatrix::Complex(random_bivector_cayley(rng, &e.rep)?),
        AnyEntry::Quaternionic(e) => AnyMatrix::Quaternion(random_bivector_cayley(rng, &e.rep)?),
    })
}

/// Random spin elements over the rational ring, for real entries.
pub fn random_real_spin_elements<G: Rng + ?Sized>(
    rng: &mut G,
    entry: &CatalogEntry<Q>,
    count: usize,
) -> Result<Vec<Matrix<Q>>, Error> {
    let any = AnyEntry::Real(entry.clone());
    let mut out = vec![];
    for _ in 0..count {
        out.push(random_spin_element(rng, &any)?.as_rational()?.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_catalog::{catalog, recognize, CATALOG_SIGNATURES};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn classical_samples_are_recognized_and_embed_into_spin() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for sig in CATALOG_SIGNATURES {
            let entry = catalog(sig).unwrap();
            for _ in 0..3 {
                let g = random_classical(&mut rng, &entry).unwrap();
                recognize(entry.classical_group(), &g).unwrap();
                let x = embed_classical(&entry, &g).unwrap();
                let report = entry.spin_membership(&x).unwrap();
                assert!(
                    report.is_member() && report.preserves_one_vectors,
                    "{sig}: {report:?}"
                );
            }
        }
    }

    #[test]
    fn even_skew_basis_is_bivectors_below_six() {
        for sig in CATALOG_SIGNATURES {
            let entry = catalog(sig).unwrap();
            let n = sig.dimension();
            let count = match &entry {
                AnyEntry::Real(e) => even_skew_basis(&e.rep).unwrap().len(),
                AnyEntry::Complex(e) => even_skew_basis(&e.rep).unwrap().len(),
                AnyEntry::Quaternionic(e) => even_skew_basis(&e.rep).unwrap().len(),
            };
            // degree 2 and degree 6 monomials
            let expect = n * (n - 1) / 2 + usize::from(n == 6);
            assert_eq!(count, expect, "{sig}");
        }
    }

    #[test]
    fn unit_quaternions_are_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert_eq!(
                random_unit_quaternion(&mut rng).norm_sq(),
                <Q as Scalar>::one()
            );
        }
    }
}
