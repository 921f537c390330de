//! Acceptance gate: one PASS/FAIL line per criterion. Exits non-zero if any fails.

use std::time::{Duration, Instant};

use cliffspin_core::clifford::CliffordRep;
use cliffspin_core::covering::{cover_group_rep, psi32_table};
use cliffspin_core::embeddings::{lambda32, theta_c1};
use cliffspin_core::expm::{expm_oracle, expm_small, SpinCoverEngine};
use cliffspin_core::named;
use cliffspin_core::sampling::{
    random_algebra_element, random_bivector, random_classical, random_condition_i_ii,
    random_rational_matrix,
};
use cliffspin_core::scalar::{q, qi};
use cliffspin_core::spin_catalog::{
    catalog, real_entry, six_conditions, spin15, spin15_printed_bivectors, spin_algebra_membership,
    spin_membership, AnyEntry, ClassicalElement, Signature, CATALOG_SIGNATURES,
};
use cliffspin_core::{kron, Complex, Matrix, Quaternion, Scalar, ToFloat, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GENERATOR_BUDGET: Duration = Duration::from_secs(1);
const EXPM_BUDGET: Duration = Duration::from_secs(5);
const COVER_TOL: f64 = 1e-9;
const EXPM_TOL: f64 = 1e-9;
const RANDOM_ELEMENTS: usize = 200;
const COVER_SAMPLES: usize = 100;
const EXPM_SAMPLES: usize = 100;
const SUPERFLUITY_SAMPLES: usize = 100;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn seed() -> u64 {
    std::env::var("SPIN_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn ints(rows: &[&[i64]]) -> Matrix<Q> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| <Q as Scalar>::from_i64(v)).collect())
            .collect(),
    )
    .unwrap()
}

/// x ↦ x·k̄ on (1, i, j, k), written out.
fn m1k() -> Matrix<Q> {
    ints(&[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]])
}

/// x ↦ x·ī on (1, i, j, k), written out.
fn m1i() -> Matrix<Q> {
    ints(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
}

fn blocks2(a: &Matrix<Q>, b: &Matrix<Q>, c: &Matrix<Q>, d: &Matrix<Q>) -> Matrix<Q> {
    Matrix::from_quarters(a, b, c, d).unwrap()
}

fn each_entry(mut f: impl FnMut(&AnyEntry) -> Result<bool, String>) -> Result<bool, String> {
    let mut all = true;
    for sig in CATALOG_SIGNATURES {
        let e = catalog(sig).map_err(|e| e.to_string())?;
        all &= f(&e)?;
    }
    Ok(all)
}

fn anticommutation_exact<T: Scalar>(rep: &CliffordRep<T>) -> bool {
    let gens = rep.generators();
    let size = rep.size();
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            let eta = if i != j {
                0
            } else if i < rep.p() {
                2
            } else {
                -2
            };
            let want = Matrix::<T>::identity(size).scale(&T::from_i64(eta));
            if &(&gens[i] * &gens[j]) + &(&gens[j] * &gens[i]) != want {
                return false;
            }
        }
    }
    true
}

fn criterion_1() -> Verdict {
    let entries: Vec<AnyEntry> = CATALOG_SIGNATURES
        .iter()
        .map(|s| catalog(*s).unwrap())
        .collect();
    let start = Instant::now();
    let ok = entries.iter().all(|e| match e {
        AnyEntry::Real(e) => anticommutation_exact(&e.rep),
        AnyEntry::Complex(e) => anticommutation_exact(&e.rep),
        AnyEntry::Quaternionic(e) => anticommutation_exact(&e.rep),
    });
    let took = start.elapsed();
    verdict(
        ok && took < GENERATOR_BUDGET,
        format!(
            "8 signatures, exact, {:.1} ms (budget {} ms)",
            took.as_secs_f64() * 1e3,
            GENERATOR_BUDGET.as_millis()
        ),
    )
}

fn involutions_exact<T: Scalar>(rep: &CliffordRep<T>, rng: &mut ChaCha8Rng) -> bool
where
    T::Real: From<Q>,
{
    for g in rep.generators() {
        if rep.apply_reversion(g).unwrap() != *g || rep.apply_conjugation(g).unwrap() != -g {
            return false;
        }
    }
    (0..RANDOM_ELEMENTS).all(|_| {
        let x = random_algebra_element(rng, rep);
        rep.apply_grade(&x).unwrap()
            == rep
                .apply_reversion(&rep.apply_conjugation(&x).unwrap())
                .unwrap()
    })
}

fn criterion_2() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let ok = each_entry(|e| {
        Ok(match e {
            AnyEntry::Real(e) => involutions_exact(&e.rep, &mut rng),
            AnyEntry::Complex(e) => involutions_exact(&e.rep, &mut rng),
            AnyEntry::Quaternionic(e) => involutions_exact(&e.rep, &mut rng),
        })
    });
    verdict(
        ok == Ok(true),
        format!("8 signatures, {RANDOM_ELEMENTS} random elements each, exact"),
    )
}

fn criterion_3() -> Verdict {
    let z4 = Matrix::<Q>::zeros(4, 4);
    let z2 = Matrix::<Q>::zeros(2, 2);
    let j2 = ints(&[&[0, 1], &[-1, 0]]);
    let mut failed = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failed.push(name.to_string());
        }
    };

    let r21 = blocks2(&z2, &j2, &j2, &z2);
    check("R21 block form = M_{1(x)k}", r21 == m1k());
    let e21 = real_entry(Signature::new(2, 1)).unwrap();
    check("R21", *e21.rep.reversion().conjugator() == r21);
    let j4 = blocks2(&z2, &Matrix::identity(2), &-&Matrix::<Q>::identity(2), &z2);
    check("C21 = J4", *e21.rep.conjugation().conjugator() == j4);

    let e32 = real_entry(Signature::new(3, 2)).unwrap();
    let c32 = blocks2(&z4, &m1k(), &-&m1k(), &z4);
    check("C32", *e32.rep.conjugation().conjugator() == c32);
    let g32 = blocks2(&-&m1i(), &z4, &z4, &m1i());
    check("G32", *e32.rep.grade().conjugator() == g32);

    let e42 = real_entry(Signature::new(4, 2)).unwrap();
    let i = |s: i64| Complex::new(qi(0), <Q as Scalar>::from_i64(s));
    let zc = Complex::<Q>::zero();
    let breve = Matrix::from_rows(vec![
        vec![zc.clone(), zc.clone(), zc.clone(), i(1)],
        vec![zc.clone(), zc.clone(), i(-1), zc.clone()],
        vec![zc.clone(), i(1), zc.clone(), zc.clone()],
        vec![i(-1), zc.clone(), zc.clone(), zc.clone()],
    ])
    .unwrap();
    check(
        "printed complex matrix = i M_{1(x)k}",
        breve == m1k().map(|v| Complex::new(qi(0), v.clone())),
    );
    check(
        "C42 = Theta_CI(i M_{1(x)k})",
        *e42.rep.conjugation().conjugator() == theta_c1(&breve),
    );

    let e33 = real_entry(Signature::new(3, 3)).unwrap();
    check("C33", *e33.rep.conjugation().conjugator() == c32);

    let e15 = spin15().unwrap();
    let c15 = kron(&j2, &named::sigma_x::<Q>()).map(|v| Quaternion::from_real(v.clone()));
    check(
        "C15 = i sigma_y (x) sigma_x",
        *e15.rep.conjugation().conjugator() == c15,
    );

    let c = |re: i64, im: i64| Complex::new(q(re, 2), q(im, 2));
    let u = Matrix::from_rows(vec![
        vec![c(1, 0), c(1, 0), c(1, 0), c(1, 0)],
        vec![c(0, -1), c(0, 1), c(0, 1), c(0, -1)],
        vec![c(1, 0), c(-1, 0), c(1, 0), c(-1, 0)],
        vec![c(0, -1), c(0, -1), c(0, 1), c(0, 1)],
    ])
    .unwrap();
    let i22 = named::i_pq::<Complex<Q>>(2, 2);
    check(
        "U* C42 U = I_{2,2}",
        &(&u.conj_transpose() * &breve) * &u == i22,
    );

    verdict(
        failed.is_empty(),
        if failed.is_empty() {
            "11 identities byte-exact".to_string()
        } else {
            format!("mismatch: {}", failed.join("; "))
        },
    )
}

fn criterion_4() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let e = real_entry(Signature::new(3, 2)).unwrap();
    let any = AnyEntry::Real(e.clone());
    let m = m1k();
    let id8 = Matrix::<Q>::identity(8);
    let mut disagreements = 0;
    let mut members = 0;
    let mut samples: Vec<Matrix<Q>> = (0..RANDOM_ELEMENTS)
        .map(|_| random_rational_matrix(&mut rng, 4, 4))
        .collect();
    for _ in 0..RANDOM_ELEMENTS {
        match random_classical(&mut rng, &any).unwrap() {
            ClassicalElement::Real(z) => samples.push(z),
            _ => disagreements += 1,
        }
    }
    for z in &samples {
        let x = lambda32(z).unwrap();
        let even = e.rep.apply_grade(&x).unwrap() == x;
        let cc_unit = &x * &e.rep.apply_conjugation(&x).unwrap() == id8;
        let breve = &(&z.transpose() * &m) * z == m;
        let six = six_conditions(z).unwrap().iter().all(|v| v.is_zero());
        let member = spin_membership(&e, &x).unwrap().is_member();
        members += member as usize;
        if !even || cc_unit != breve || six != member || member != breve {
            disagreements += 1;
        }
    }
    verdict(
        disagreements == 0 && members >= RANDOM_ELEMENTS,
        format!(
            "{} samples ({members} members), {disagreements} disagreements, exact",
            2 * RANDOM_ELEMENTS
        ),
    )
}

fn criterion_5() -> Verdict {
    let rows = psi32_table(&real_entry(Signature::new(3, 2)).unwrap()).unwrap();
    let matches = rows.iter().filter(|r| r.m_matches).count();
    let mut detail = format!("{matches}/10 M columns reproduced exactly (need >= 9)");
    for r in rows.iter().filter(|r| !r.m_matches) {
        detail.push_str(&format!(
            "; row {}: printed {} vs computed {}",
            r.index,
            cliffspin::app::unit_terms(&r.m_printed),
            cliffspin::app::unit_terms(&r.m_computed)
        ));
    }
    verdict(matches >= 9, detail)
}

fn float_cover_checks<T: Scalar + ToFloat>(
    rep: &CliffordRep<T>,
    rng: &mut ChaCha8Rng,
) -> Result<f64, String>
where
    T::Real: From<Q>,
    T::Float: Scalar<Real = f64>,
{
    let sig = Signature::new(rep.p(), rep.q());
    let rf = rep.to_float();
    let ipq = named::i_pq::<f64>(sig.p, sig.q);
    let sample = |rng: &mut ChaCha8Rng| {
        let y = random_bivector(rng, rep).to_float();
        let n = y.norm_one().max(1.0);
        expm_small(&y.scale_real(&(1.0 / n)), 1e-12).unwrap()
    };
    let phi = |g: &Matrix<T::Float>| {
        cover_group_rep(&rf, g, COVER_TOL)
            .map(|r| r.matrix)
            .map_err(|e| e.to_string())
    };
    let mut worst = 0.0f64;
    for _ in 0..COVER_SAMPLES {
        let (g, h) = (sample(rng), sample(rng));
        let (pg, ph) = (phi(&g)?, phi(&h)?);
        worst = worst.max((&phi(&-&g)? - &pg).max_abs());
        worst = worst.max((&phi(&(&g * &h))? - &(&pg * &ph)).max_abs());
        worst = worst.max((&(&(&pg.transpose() * &ipq) * &pg) - &ipq).max_abs());
    }
    Ok(worst)
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut worst = 0.0f64;
    for (p, q) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let e = real_entry(Signature::new(p, q)).unwrap();
        match float_cover_checks(&e.rep, &mut rng) {
            Ok(w) => worst = worst.max(w),
            Err(err) => return verdict(false, format!("({p},{q}): {err}")),
        }
    }
    verdict(
        worst <= COVER_TOL,
        format!(
            "4 signatures x {COVER_SAMPLES} pairs, worst defect {worst:.2e} (tol {COVER_TOL:e})"
        ),
    )
}

fn criterion_7() -> Verdict {
    let e42 = real_entry(Signature::new(4, 2)).unwrap();
    let jt = theta_c1(&Matrix::<Complex<Q>>::identity(4).scale(&Complex::new(qi(0), qi(1))));
    let e33 = real_entry(Signature::new(3, 3)).unwrap();
    let sz = kron(
        &kron(&named::sigma_z::<Q>(), &named::identity(2)),
        &named::identity(2),
    );
    let only_iii = |r: &cliffspin_core::spin_catalog::MembershipReport| {
        r.even && r.involution && !r.preserves_one_vectors && !r.is_member()
    };
    let a42 = spin_algebra_membership(&e42, &jt).unwrap();
    let a33 = spin_algebra_membership(&e33, &sz).unwrap();
    // group-level elements that fail only (iii): cos + sin J~8 and diag(2 I4, I4/2)
    let rot = &Matrix::<Q>::identity(8).scale(&q(3, 5)) + &jt.scale(&q(4, 5));
    let g42 = spin_membership(&e42, &rot).unwrap();
    let half = q(1, 2);
    let d = Matrix::diagonal(&[vec![qi(2); 4], vec![half; 4]].concat());
    let g33 = spin_membership(&e33, &d).unwrap();
    let literal = spin_membership(&e42, &jt).unwrap();
    let ok = only_iii(&a42) && only_iii(&a33) && only_iii(&g42) && only_iii(&g33);
    verdict(
        ok,
        format!(
            "spin+ level: (4,2) fails {:?}, (3,3) fails {:?}; group level: (4,2) fails {:?}, (3,3) fails {:?}; J~8 itself as a group element is_member={}",
            a42.failed().iter().map(|c| c.name()).collect::<Vec<_>>(),
            a33.failed().iter().map(|c| c.name()).collect::<Vec<_>>(),
            g42.failed().iter().map(|c| c.name()).collect::<Vec<_>>(),
            g33.failed().iter().map(|c| c.name()).collect::<Vec<_>>(),
            literal.is_member()
        ),
    )
}

fn criterion_8() -> Verdict {
    let e = spin15().unwrap();
    let gens = e.rep.generators();
    let mut mismatches = Vec::new();
    let printed = spin15_printed_bivectors();
    for ((i, j), want) in &printed {
        let got = &gens[*i] * &gens[*j];
        if got != *want {
            mismatches.push(format!("X{}X{}", i + 1, j + 1));
        }
    }
    let nw: Vec<Matrix<Quaternion<Q>>> = e
        .rep
        .bivector_basis()
        .iter()
        .map(|b| b.submatrix(0, 0, 2, 2))
        .collect();
    let trace_real_zero = nw.iter().all(|b| b.trace().re().is_zero());
    let rank = cliffspin_core::clifford::real_rank(&nw);
    let ok = printed.len() == 15 && mismatches.is_empty() && trace_real_zero && rank == 15;
    verdict(
        ok,
        format!(
            "{}/15 printed products match{}; NW-block span rank {rank}, trace-real-zero {trace_real_zero}",
            15 - mismatches.len(),
            if mismatches.is_empty() { String::new() } else { format!(" (mismatch: {})", mismatches.join(", ")) }
        ),
    )
}

fn criterion_9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let sig = Signature::new(3, 2);
    let ipq = named::i_pq::<f64>(3, 2);
    let inputs: Vec<Matrix<f64>> = (0..EXPM_SAMPLES)
        .map(|_| {
            let a = Matrix::from_fn(5, 5, |_, _| rng.gen_range(-1.0..=1.0));
            &ipq * &(&a - &a.transpose()).scale(&0.5)
        })
        .collect();
    let start = Instant::now();
    let engine = SpinCoverEngine::new(sig).unwrap();
    let mut worst = 0.0f64;
    for x in &inputs {
        let (m, _) = engine.exp(x, 1e-12).unwrap();
        worst = worst.max((&m - &expm_oracle(x).unwrap()).max_abs());
    }
    let took = start.elapsed();
    verdict(
        worst <= EXPM_TOL && took < EXPM_BUDGET,
        format!("{EXPM_SAMPLES} samples, worst |spin - oracle| {worst:.2e} (tol {EXPM_TOL:e}), {:.0} ms (budget {} ms)", took.as_secs_f64() * 1e3, EXPM_BUDGET.as_millis()),
    )
}

fn superfluous<T: Scalar>(rep: &CliffordRep<T>, rng: &mut ChaCha8Rng) -> usize
where
    T::Real: From<Q>,
{
    (0..SUPERFLUITY_SAMPLES)
        .filter(|_| {
            let x = random_condition_i_ii(rng, rep).unwrap();
            let r = cliffspin_core::spin_catalog::spin_membership_tol(rep, &x, 0.0).unwrap();
            !(r.even && r.involution && r.preserves_one_vectors)
        })
        .count()
}

fn criterion_10() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut bad = 0;
    let mut sigs = 0;
    for sig in CATALOG_SIGNATURES.iter().filter(|s| s.dimension() <= 5) {
        sigs += 1;
        bad += match catalog(*sig).unwrap() {
            AnyEntry::Real(e) => superfluous(&e.rep, &mut rng),
            AnyEntry::Complex(e) => superfluous(&e.rep, &mut rng),
            AnyEntry::Quaternionic(e) => superfluous(&e.rep, &mut rng),
        };
    }
    verdict(
        bad == 0,
        format!(
            "{sigs} signatures x {SUPERFLUITY_SAMPLES} elements with (i)-(ii); {bad} fail (iii)"
        ),
    )
}

fn main() {
    // libtest flags (e.g. --nocapture) are accepted and ignored
    let criteria: [Criterion; 10] = [
        ("generator suites", criterion_1),
        ("involution suites", criterion_2),
        ("printed conjugators", criterion_3),
        ("spin(3,2) equivalences", criterion_4),
        ("psi(3,2) table", criterion_5),
        ("double cover", criterion_6),
        ("condition (iii) discriminators", criterion_7),
        ("spin(1,5) bivector table", criterion_8),
        ("exponentiation", criterion_9),
        ("superfluity of (iii)", criterion_10),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        failures += !v.passed as usize;
        println!(
            "{} criterion {:>2} {name}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            k + 1,
            v.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
