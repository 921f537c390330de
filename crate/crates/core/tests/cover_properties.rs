//! Properties of the involutions and of both cover maps on random exact elements.

use cliffspin_core::clifford::CliffordRep;
use cliffspin_core::covering::{
    cover_algebra_rep, cover_group_rep, in_identity_component, is_in_so, AlgebraCoverInverse,
};
use cliffspin_core::named;
use cliffspin_core::sampling::{random_algebra_element, random_bivector, random_bivector_cayley};
use cliffspin_core::spin_catalog::{catalog, AnyEntry, Signature, CATALOG_SIGNATURES};
use cliffspin_core::{Matrix, Scalar, Q};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_signatures() -> Vec<Signature> {
    CATALOG_SIGNATURES
        .iter()
        .copied()
        .filter(|s| s.dimension() <= 5)
        .collect()
}

fn involution_laws<T: Scalar>(
    rep: &CliffordRep<T>,
    rng: &mut ChaCha8Rng,
) -> Result<(), TestCaseError>
where
    T::Real: From<Q>,
{
    let x = random_algebra_element(rng, rep);
    let y = random_algebra_element(rng, rep);
    let xy = &x * &y;
    for form in [rep.reversion(), rep.conjugation()] {
        prop_assert_eq!(
            form.apply(&xy).unwrap(),
            &form.apply(&y).unwrap() * &form.apply(&x).unwrap()
        );
        prop_assert_eq!(form.apply(&form.apply(&x).unwrap()).unwrap(), x.clone());
    }
    let g = rep.grade();
    prop_assert_eq!(
        g.apply(&xy).unwrap(),
        &g.apply(&x).unwrap() * &g.apply(&y).unwrap()
    );
    Ok(())
}

fn group_cover_laws<T: Scalar>(
    rep: &CliffordRep<T>,
    rng: &mut ChaCha8Rng,
) -> Result<(), TestCaseError>
where
    T::Real: From<Q>,
{
    let sig = Signature::new(rep.p(), rep.q());
    let g = random_bivector_cayley(rng, rep).unwrap();
    let h = random_bivector_cayley(rng, rep).unwrap();
    let phi = |m: &Matrix<T>| cover_group_rep(rep, m, 0.0).unwrap().matrix;
    let (pg, ph) = (phi(&g), phi(&h));
    prop_assert_eq!(phi(&(&g * &h)), &pg * &ph);
    prop_assert_eq!(phi(&-&g), pg.clone());
    let ipq = named::i_pq::<T::Real>(sig.p, sig.q);
    prop_assert_eq!(&(&pg.transpose() * &ipq) * &pg, ipq);
    prop_assert!(in_identity_component(&pg, sig).unwrap());
    Ok(())
}

fn algebra_cover_laws<T: Scalar>(
    rep: &CliffordRep<T>,
    rng: &mut ChaCha8Rng,
) -> Result<(), TestCaseError>
where
    T::Real: From<Q>,
{
    let sig = Signature::new(rep.p(), rep.q());
    let a = random_bivector(rng, rep);
    let b = random_bivector(rng, rep);
    let psi = |m: &Matrix<T>| cover_algebra_rep(rep, m, 0.0).unwrap().matrix;
    let (pa, pb) = (psi(&a), psi(&b));
    prop_assert!(is_in_so(&pa, sig, 0.0));
    prop_assert_eq!(psi(&a.commutator(&b)), pa.commutator(&pb));
    let inverse = AlgebraCoverInverse::new(rep, 0.0).unwrap();
    prop_assert_eq!(inverse.apply(&pa).unwrap(), a);
    Ok(())
}

fn run(sig: Signature, seed: u64, law: &str) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    macro_rules! dispatch {
        ($rep:expr) => {
            match law {
                "involution" => involution_laws($rep, &mut rng),
                "group" => group_cover_laws($rep, &mut rng),
                _ => algebra_cover_laws($rep, &mut rng),
            }
        };
    }
    match catalog(sig).unwrap() {
        AnyEntry::Real(e) => dispatch!(&e.rep),
        AnyEntry::Complex(e) => dispatch!(&e.rep),
        AnyEntry::Quaternionic(e) => dispatch!(&e.rep),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn involutions_are_anti_and_grade_is_multiplicative(idx in 0usize..8, seed in any::<u64>()) {
        run(CATALOG_SIGNATURES[idx], seed, "involution")?;
    }

    #[test]
    fn group_cover_is_a_two_to_one_homomorphism_into_so_plus(idx in 0usize..5, seed in any::<u64>()) {
        run(small_signatures()[idx], seed, "group")?;
    }

    #[test]
    fn algebra_cover_is_a_lie_isomorphism(idx in 0usize..8, seed in any::<u64>()) {
        run(CATALOG_SIGNATURES[idx], seed, "algebra")?;
    }
}
