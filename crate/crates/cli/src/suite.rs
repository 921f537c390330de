//! The `verify` suite: every identity group for one catalog signature, itemized.

use cliffspin_core::any::AnyMatrix;
use cliffspin_core::clifford::{CliffordRep, Failure};
use cliffspin_core::covering::{
    cover_algebra_rep, cover_group, in_identity_component, is_in_so, AlgebraCoverInverse,
};
use cliffspin_core::expm::{ExpmInput, ExpmMethod, ExpmRequest, SpinCoverEngine};
use cliffspin_core::sampling::{
    random_algebra_element, random_bivector, random_classical, random_condition_i_ii,
    random_spin_element,
};
use cliffspin_core::spin_catalog::{
    catalog, embed_classical, recognize, spin_membership, AnyEntry, CatalogEntry, Signature,
};
use cliffspin_core::{named, Complex, Error, Matrix, Quaternion, Scalar, ToFloat, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const SEED_ENV: &str = "SPIN_SEED";

/// The seed from `SPIN_SEED`, or 0.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub involution_samples: usize,
    pub group_samples: usize,
    pub expm_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            involution_samples: 200,
            group_samples: 10,
            expm_samples: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckGroup {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckGroup {
    fn new(name: &'static str) -> Self {
        CheckGroup {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, checks: usize, failures: &[Failure]) {
        self.checks += checks;
        self.failures
            .extend(failures.iter().map(|f| format!("{f:?}")));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub signature: Signature,
    pub seed: u64,
    pub groups: Vec<CheckGroup>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.groups.iter().all(CheckGroup::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "signature": self.signature.to_string(),
            "seed": self.seed,
            "passed": self.passed(),
            "groups": self.groups.iter().map(|g| json!({
                "name": g.name,
                "checks": g.checks,
                "passed": g.passed(),
                "failures": g.failures,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_pretty(&self) -> String {
        let mut out = format!("verify {} (seed {})\n", self.signature, self.seed);
        for g in &self.groups {
            let status = if g.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("  {status} {:<14} {} checks\n", g.name, g.checks));
            for f in &g.failures {
                out.push_str(&format!("       - {f}\n"));
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("group,checks,passed,failures\n");
        for g in &self.groups {
            out.push_str(&format!(
                "{},{},{},{}\n",
                g.name,
                g.checks,
                g.passed(),
                g.failures.len()
            ));
        }
        out
    }
}

/// Rings of the catalog, with the way back from tagged matrices.
pub trait CatalogRing: Scalar<Real = Q> + ToFloat {
    fn from_any(m: &AnyMatrix) -> Result<Matrix<Self>, Error>;
}

impl CatalogRing for Q {
    fn from_any(m: &AnyMatrix) -> Result<Matrix<Q>, Error> {
        m.as_rational().cloned()
    }
}

impl CatalogRing for Complex<Q> {
    fn from_any(m: &AnyMatrix) -> Result<Matrix<Self>, Error> {
        m.as_complex()
    }
}

impl CatalogRing for Quaternion<Q> {
    fn from_any(m: &AnyMatrix) -> Result<Matrix<Self>, Error> {
        m.as_quaternion()
    }
}

pub fn verify_signature(sig: Signature, cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let entry = catalog(sig)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut groups = match &entry {
        AnyEntry::Real(e) => entry_groups(&entry, e, &mut rng, cfg)?,
        AnyEntry::Complex(e) => entry_groups(&entry, e, &mut rng, cfg)?,
        AnyEntry::Quaternionic(e) => entry_groups(&entry, e, &mut rng, cfg)?,
    };
    groups.push(expm_group(sig, &mut rng, cfg)?);
    Ok(SuiteReport {
        signature: sig,
        seed: cfg.seed,
        groups,
    })
}

fn entry_groups<T: CatalogRing>(
    any: &AnyEntry,
    e: &CatalogEntry<T>,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
) -> Result<Vec<CheckGroup>, Error> {
    let rep = &e.rep;
    let mut out = vec![
        generator_group(rep),
        involution_group(rep, rng, cfg.involution_samples)?,
    ];

    let mut samples = Vec::with_capacity(cfg.group_samples);
    for _ in 0..cfg.group_samples {
        samples.push(T::from_any(&random_spin_element(rng, any)?)?);
    }
    out.push(membership_group(any, e, &samples, rng, cfg)?);
    out.push(cover_group_checks(e, &samples)?);
    out.push(liealg_group(rep, rng, cfg.group_samples)?);
    if e.signature.dimension() <= 5 {
        let mut g = CheckGroup::new("superfluity");
        for k in 0..cfg.group_samples {
            let x = random_condition_i_ii(rng, rep)?;
            let r = spin_membership(e, &x)?;
            g.check(r.even && r.involution && r.preserves_one_vectors, || {
                format!("sample {k}: (i)-(ii) without (iii)")
            });
        }
        out.push(g);
    }
    Ok(out)
}

fn generator_group<T: Scalar>(rep: &CliffordRep<T>) -> CheckGroup {
    let mut g = CheckGroup::new("generators");
    let r = rep.verify_generators();
    g.absorb(r.checks, &r.failures);
    let r = rep.verify_trace_orthogonality();
    g.absorb(r.checks, &r.failures);
    g
}

fn involution_group<T: CatalogRing>(
    rep: &CliffordRep<T>,
    rng: &mut ChaCha8Rng,
    n: usize,
) -> Result<CheckGroup, Error> {
    let mut g = CheckGroup::new("involutions");
    for k in 0..n {
        let x = random_algebra_element(rng, rep);
        let y = random_algebra_element(rng, rep);
        let rev = |m: &Matrix<T>| rep.apply_reversion(m);
        let cc = |m: &Matrix<T>| rep.apply_conjugation(m);
        g.check(rep.grade_matches_composition(&x)?, || {
            format!("sample {k}: grade != rev o cc")
        });
        g.check(rev(&rev(&x)?)? == x, || {
            format!("sample {k}: reversion not involutive")
        });
        g.check(cc(&cc(&x)?)? == x, || {
            format!("sample {k}: conjugation not involutive")
        });
        let xy = &x * &y;
        g.check(rev(&xy)? == &rev(&y)? * &rev(&x)?, || {
            format!("sample {k}: reversion not anti-multiplicative")
        });
        g.check(cc(&xy)? == &cc(&y)? * &cc(&x)?, || {
            format!("sample {k}: conjugation not anti-multiplicative")
        });
    }
    Ok(g)
}

fn membership_group<T: CatalogRing>(
    any: &AnyEntry,
    e: &CatalogEntry<T>,
    samples: &[Matrix<T>],
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
) -> Result<CheckGroup, Error> {
    let mut g = CheckGroup::new("membership");
    let id = Matrix::<T>::identity(e.rep.size());
    g.check(spin_membership(e, &id)?.is_member(), || {
        "identity is not a member".into()
    });
    g.check(spin_membership(e, &-&id)?.is_member(), || {
        "-identity is not a member".into()
    });
    let two = id.scale(&T::from_i64(2));
    g.check(!spin_membership(e, &two)?.involution, || {
        "2I passes x x^cc = I".into()
    });
    for (k, x) in samples.iter().enumerate() {
        g.check(spin_membership(e, x)?.is_member(), || {
            format!("sample {k} is not a member")
        });
    }
    for k in 0..cfg.group_samples {
        let c = random_classical(rng, any)?;
        g.check(recognize(e.classical_group, &c).is_ok(), || {
            format!("classical sample {k} not recognized")
        });
        let x = T::from_any(&embed_classical(any, &c)?)?;
        g.check(spin_membership(e, &x)?.is_member(), || {
            format!("embedded classical sample {k} is not a member")
        });
    }
    Ok(g)
}

fn cover_group_checks<T: CatalogRing>(
    e: &CatalogEntry<T>,
    samples: &[Matrix<T>],
) -> Result<CheckGroup, Error> {
    let mut g = CheckGroup::new("cover");
    let sig = e.signature;
    let n = sig.dimension();
    let ipq = named::i_pq::<Q>(sig.p, sig.q);
    let images: Vec<Matrix<Q>> = samples
        .iter()
        .map(|x| cover_group(e, x).map(|r| r.matrix))
        .collect::<Result<_, _>>()?;
    g.check(
        cover_group(e, &Matrix::identity(e.rep.size()))?.matrix == Matrix::identity(n),
        || "cover(I) != I".into(),
    );
    for (k, (x, m)) in samples.iter().zip(&images).enumerate() {
        g.check(&(&m.transpose() * &ipq) * m == ipq, || {
            format!("sample {k}: image not in O(p,q)")
        });
        g.check(m.determinant()? == Q::one(), || {
            format!("sample {k}: det != 1")
        });
        g.check(in_identity_component(m, sig)?, || {
            format!("sample {k}: leading block determinant not positive")
        });
        g.check(cover_group(e, &-x)?.matrix == *m, || {
            format!("sample {k}: cover(-g) != cover(g)")
        });
        let next = (k + 1) % samples.len();
        let prod = cover_group(e, &(x * &samples[next]))?.matrix;
        g.check(prod == m * &images[next], || {
            format!("samples {k},{next}: not a homomorphism")
        });
    }
    Ok(g)
}

fn liealg_group<T: CatalogRing>(
    rep: &CliffordRep<T>,
    rng: &mut ChaCha8Rng,
    n: usize,
) -> Result<CheckGroup, Error> {
    let mut g = CheckGroup::new("liealg");
    let sig = Signature::new(rep.p(), rep.q());
    let d = sig.dimension();
    let images: Vec<Matrix<Q>> = rep
        .bivector_basis()
        .iter()
        .map(|b| cover_algebra_rep(rep, b, 0.0).map(|r| r.matrix))
        .collect::<Result<_, _>>()?;
    for (k, m) in images.iter().enumerate() {
        g.check(is_in_so(m, sig, 0.0), || {
            format!("bivector {k}: image not in so(p,q)")
        });
    }
    let rank = cliffspin_core::clifford::rank(images.iter().map(|m| m.data().to_vec()).collect());
    g.check(rank == d * (d - 1) / 2, || {
        format!("image rank {rank}, expected {}", d * (d - 1) / 2)
    });
    let inverse = AlgebraCoverInverse::new(rep, 0.0)?;
    for k in 0..n {
        let y = random_bivector(rng, rep);
        let x = cover_algebra_rep(rep, &y, 0.0)?.matrix;
        g.check(inverse.apply(&x)? == y, || {
            format!("sample {k}: inverse does not round-trip")
        });
    }
    Ok(g)
}

fn expm_group(
    sig: Signature,
    rng: &mut ChaCha8Rng,
    cfg: &SuiteConfig,
) -> Result<CheckGroup, Error> {
    let mut g = CheckGroup::new("expm");
    let engine = SpinCoverEngine::new(sig)?;
    let n = sig.dimension();
    let ipq = named::i_pq::<f64>(sig.p, sig.q);
    for k in 0..cfg.expm_samples {
        let a = Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..=1.0));
        let x = &ipq * &(&a - &a.transpose()).scale(&0.5);
        let req = ExpmRequest {
            signature: sig,
            x: ExpmInput::Float(x),
            tolerance: 1e-12,
            method: ExpmMethod::SpinCover,
            compare: true,
        };
        let out = engine.run(&req)?;
        let d = &out.diagnostics;
        let diff = d.comparison_max_diff.unwrap_or(f64::INFINITY);
        g.check(diff <= 1e-9, || {
            format!("sample {k}: spin cover vs oracle {diff:e}")
        });
        g.check(d.orthogonality_residual <= 1e-9, || {
            format!(
                "sample {k}: orthogonality residual {:e}",
                d.orthogonality_residual
            )
        });
        g.check(d.det_defect <= 1e-9, || {
            format!("sample {k}: det defect {:e}", d.det_defect)
        });
        g.check(!d.residual_flags.iter().any(|f| *f), || {
            format!("sample {k}: residual flags set")
        });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_everywhere() {
        let cfg = SuiteConfig {
            seed: 7,
            involution_samples: 3,
            group_samples: 2,
            expm_samples: 1,
        };
        for sig in cliffspin_core::spin_catalog::CATALOG_SIGNATURES {
            let r = verify_signature(sig, &cfg).unwrap();
            assert!(r.passed(), "{}", r.to_pretty());
        }
    }

    #[test]
    fn reports_render() {
        let mut g = CheckGroup::new("x");
        g.check(false, || "broken".into());
        let r = SuiteReport {
            signature: Signature::new(2, 1),
            seed: 0,
            groups: vec![g],
        };
        assert!(!r.passed());
        assert_eq!(r.to_json()["groups"][0]["failures"][0], "broken");
        assert!(r.to_pretty().contains("FAIL x"));
        assert_eq!(r.to_csv(), "group,checks,passed,failures\nx,1,false,1\n");
    }
}
