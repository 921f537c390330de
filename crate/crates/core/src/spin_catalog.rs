//! The eight worked spin groups: their representations, membership tests and
//! classical-group parameterizations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::any::AnyMatrix;
use crate::clifford::{BaseOp, CliffordRep, InvolutionForm, DEFAULT_FLOAT_TOL};
use crate::complex::Complex;
use crate::embeddings::{lambda32, quaternionic_determinant, theta_c1, theta_c2, theta_h};
use crate::error::Error;
use crate::matrix::{kron, Matrix};
use crate::named;
use crate::quat_tensor::{conjugating_quaternion, m_tensor};
use crate::quaternion::Quaternion;
use crate::scalar::{QSqrt2, RealScalar, Ring, Scalar, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub const fn new(p: usize, q: usize) -> Self {
        Signature { p, q }
    }

    pub fn dimension(self) -> usize {
        self.p + self.q
    }

    /// Accepts "p,q".
    pub fn parse(s: &str) -> Option<Self> {
        let (p, q) = s.split_once(',')?;
        Some(Signature {
            p: p.trim().parse().ok()?,
            q: q.trim().parse().ok()?,
        })
    }

    /// Whether the catalog has an entry for this signature.
    pub fn is_cataloged(self) -> bool {
        CATALOG_SIGNATURES.contains(&self)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

pub const CATALOG_SIGNATURES: [Signature; 8] = [
    Signature::new(2, 1),
    Signature::new(3, 1),
    Signature::new(2, 2),
    Signature::new(3, 2),
    Signature::new(4, 1),
    Signature::new(4, 2),
    Signature::new(1, 5),
    Signature::new(3, 3),
];

/// The classical group each spin group is identified with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalGroup {
    Sl2R,
    Sl2C,
    Sl2RxSl2R,
    BreveSp4R,
    ThetaHConstrained,
    Su22Conjugate,
    Sl2HBlock,
    Sl4RBlock,
}

impl ClassicalGroup {
    pub fn name(self) -> &'static str {
        match self {
            ClassicalGroup::Sl2R => "SL2R",
            ClassicalGroup::Sl2C => "SL2C",
            ClassicalGroup::Sl2RxSl2R => "SL2RxSL2R",
            ClassicalGroup::BreveSp4R => "breveSp4R",
            ClassicalGroup::ThetaHConstrained => "theta_H_constrained",
            ClassicalGroup::Su22Conjugate => "SU22_conjugate",
            ClassicalGroup::Sl2HBlock => "SL2H_block",
            ClassicalGroup::Sl4RBlock => "SL4R_block",
        }
    }

    pub fn for_signature(sig: Signature) -> Result<Self, Error> {
        Ok(match (sig.p, sig.q) {
            (2, 1) => ClassicalGroup::Sl2R,
            (3, 1) => ClassicalGroup::Sl2C,
            (2, 2) => ClassicalGroup::Sl2RxSl2R,
            (3, 2) => ClassicalGroup::BreveSp4R,
            (4, 1) => ClassicalGroup::ThetaHConstrained,
            (4, 2) => ClassicalGroup::Su22Conjugate,
            (1, 5) => ClassicalGroup::Sl2HBlock,
            (3, 3) => ClassicalGroup::Sl4RBlock,
            (p, q) => return Err(Error::UnsupportedSignature { p, q }),
        })
    }
}

/// How a catalog basis was reached from its seed.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub seed: Signature,
    pub ic_steps: usize,
    /// P in Yᵢ = P⁻¹XᵢP, after the last IC step.
    pub basis_change: Option<AnyMatrix>,
    /// Forms whose conjugator was replaced by the printed real multiple.
    pub printed_forms: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry<T> {
    pub signature: Signature,
    pub rep: CliffordRep<T>,
    pub classical_group: ClassicalGroup,
    pub provenance: Provenance,
}

/// A catalog entry over whichever ring its signature needs.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyEntry {
    Real(CatalogEntry<Q>),
    Complex(CatalogEntry<Complex<Q>>),
    Quaternionic(CatalogEntry<Quaternion<Q>>),
}

impl AnyEntry {
    pub fn signature(&self) -> Signature {
        match self {
            AnyEntry::Real(e) => e.signature,
            AnyEntry::Complex(e) => e.signature,
            AnyEntry::Quaternionic(e) => e.signature,
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            AnyEntry::Real(_) => Ring::Rational,
            AnyEntry::Complex(_) => Ring::Complex,
            AnyEntry::Quaternionic(_) => Ring::Quaternion,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            AnyEntry::Real(e) => e.rep.size(),
            AnyEntry::Complex(e) => e.rep.size(),
            AnyEntry::Quaternionic(e) => e.rep.size(),
        }
    }

    pub fn classical_group(&self) -> ClassicalGroup {
        match self {
            AnyEntry::Real(e) => e.classical_group,
            AnyEntry::Complex(e) => e.classical_group,
            AnyEntry::Quaternionic(e) => e.classical_group,
        }
    }

    pub fn provenance(&self) -> &Provenance {
        match self {
            AnyEntry::Real(e) => &e.provenance,
            AnyEntry::Complex(e) => &e.provenance,
            AnyEntry::Quaternionic(e) => &e.provenance,
        }
    }

    pub fn as_real(&self) -> Result<&CatalogEntry<Q>, Error> {
        match self {
            AnyEntry::Real(e) => Ok(e),
            _ => Err(Error::RingMismatch {
                expected: Ring::Rational,
                found: self.ring(),
            }),
        }
    }

    pub fn as_complex(&self) -> Result<&CatalogEntry<Complex<Q>>, Error> {
        match self {
            AnyEntry::Complex(e) => Ok(e),
            _ => Err(Error::RingMismatch {
                expected: Ring::Complex,
                found: self.ring(),
            }),
        }
    }

    pub fn as_quaternionic(&self) -> Result<&CatalogEntry<Quaternion<Q>>, Error> {
        match self {
            AnyEntry::Quaternionic(e) => Ok(e),
            _ => Err(Error::RingMismatch {
                expected: Ring::Quaternion,
                found: self.ring(),
            }),
        }
    }

    /// Group membership of a matrix given in any ring that embeds into the entry's ring.
    pub fn spin_membership(&self, x: &AnyMatrix) -> Result<MembershipReport, Error> {
        match self {
            AnyEntry::Real(e) => spin_membership(e, x.promote(Ring::Rational)?.as_rational()?),
            AnyEntry::Complex(e) => spin_membership(e, &x.as_complex()?),
            AnyEntry::Quaternionic(e) => spin_membership(e, &x.as_quaternion()?),
        }
    }

    pub fn spin_algebra_membership(&self, y: &AnyMatrix) -> Result<MembershipReport, Error> {
        match self {
            AnyEntry::Real(e) => {
                spin_algebra_membership(e, y.promote(Ring::Rational)?.as_rational()?)
            }
            AnyEntry::Complex(e) => spin_algebra_membership(e, &y.as_complex()?),
            AnyEntry::Quaternionic(e) => spin_algebra_membership(e, &y.as_quaternion()?),
        }
    }
}

/// The catalog representation for one of the eight signatures.
pub fn catalog(sig: Signature) -> Result<AnyEntry, Error> {
    Ok(match (sig.p, sig.q) {
        (4, 1) => AnyEntry::Complex(spin41()?),
        (1, 5) => AnyEntry::Quaternionic(spin15()?),
        _ => AnyEntry::Real(real_entry(sig)?),
    })
}

/// Entries whose representation is real: (2,1), (3,1), (2,2), (3,2), (4,2), (3,3).
pub fn real_entry(sig: Signature) -> Result<CatalogEntry<Q>, Error> {
    let classical_group = ClassicalGroup::for_signature(sig)?;
    let (rep, provenance) = match (sig.p, sig.q) {
        (2, 1) => {
            let rep = seed10()?.ic_step()?;
            (rep, provenance(Signature::new(1, 0), 1, None, vec![]))
        }
        (3, 2) => {
            let rep = seed10()?.ic_step()?.ic_step()?;
            let rep = adopt_printed_grade(rep, grade32())?;
            (
                rep,
                provenance(Signature::new(1, 0), 2, None, vec!["grade"]),
            )
        }
        (3, 1) => build31()?,
        (2, 2) => {
            let rep = seed11()?.ic_step()?;
            (rep, provenance(Signature::new(1, 1), 1, None, vec![]))
        }
        (3, 3) => build33()?,
        (4, 2) => build42()?,
        (p, q) => return Err(Error::UnsupportedSignature { p, q }),
    };
    Ok(CatalogEntry {
        signature: sig,
        rep,
        classical_group,
        provenance,
    })
}

fn provenance(
    seed: Signature,
    ic_steps: usize,
    basis_change: Option<AnyMatrix>,
    printed: Vec<&'static str>,
) -> Provenance {
    Provenance {
        seed,
        ic_steps,
        basis_change,
        printed_forms: printed,
    }
}

fn form<T: Scalar>(op: BaseOp, m: Matrix<T>) -> Result<InvolutionForm<T>, Error> {
    InvolutionForm::new(op, m)
}

/// Cl(1,0) = {σ_z}: reversion X ↦ Xᵀ, conjugation X ↦ J₂ᵀXᵀJ₂.
fn seed10() -> Result<CliffordRep<Q>, Error> {
    CliffordRep::new(
        1,
        0,
        vec![named::sigma_z()],
        form(BaseOp::Transpose, named::identity(2))?,
        form(BaseOp::Transpose, named::j2())?,
    )
}

/// Cl(2,0) with the given ordering of {σ_x, σ_z}.
fn seed20(gens: Vec<Matrix<Q>>) -> Result<CliffordRep<Q>, Error> {
    CliffordRep::new(
        2,
        0,
        gens,
        form(BaseOp::Transpose, named::identity(2))?,
        form(BaseOp::Transpose, named::j2())?,
    )
}

/// Cl(1,1) = {σ_x, J₂}: reversion by σ_x, conjugation by J₂.
fn seed11() -> Result<CliffordRep<Q>, Error> {
    CliffordRep::new(
        1,
        1,
        vec![named::sigma_x(), named::j2()],
        form(BaseOp::Transpose, named::sigma_x())?,
        form(BaseOp::Transpose, named::j2())?,
    )
}

fn rq(n: i64) -> Q {
    <Q as RealScalar>::from_ratio(n, 1)
}

fn quat(w: i64, x: i64, y: i64, z: i64) -> Quaternion<Q> {
    Quaternion::from_ints(w, x, y, z)
}

/// M_{1⊗u} for u among ±1, ±i, ±j, ±k given as integer components.
fn m1(u: Quaternion<Q>) -> Matrix<Q> {
    m_tensor(&Quaternion::one(), &u)
}

/// Change of basis by P = √n·(orthogonal P'), using the rational P only.
///
/// Generators are unaffected by the scale; anti-automorphism conjugators pick up
/// a factor n, which is divided out.
fn scaled_orthogonal_change<T: Scalar>(
    rep: &CliffordRep<T>,
    p: &Matrix<T>,
    n: i64,
) -> Result<CliffordRep<T>, Error> {
    let changed = rep.change_basis(p)?;
    let s = T::Real::from_ratio(1, n);
    let fix = |f: &InvolutionForm<T>| {
        if f.base_op().is_anti() {
            InvolutionForm::new(f.base_op(), f.conjugator().scale_real(&s))
        } else {
            Ok(f.clone())
        }
    };
    CliffordRep::with_grade(
        changed.p(),
        changed.q(),
        changed.generators().to_vec(),
        fix(changed.reversion())?,
        fix(changed.conjugation())?,
        fix(changed.grade())?,
    )
}

/// Replaces a computed form by the printed conjugator, which must be a real multiple of it.
fn printed_form<T: Scalar>(
    computed: &InvolutionForm<T>,
    printed: Matrix<T>,
    which: &'static str,
) -> Result<InvolutionForm<T>, Error> {
    let candidate = InvolutionForm::new(computed.base_op(), printed)?;
    if computed.equivalent(&candidate) {
        Ok(candidate)
    } else {
        Err(Error::PrintedFormMismatch(which))
    }
}

fn adopt_printed<T: Scalar>(
    rep: CliffordRep<T>,
    conjugation: Option<Matrix<T>>,
    grade: Option<Matrix<T>>,
) -> Result<CliffordRep<T>, Error> {
    let cc = match conjugation {
        Some(m) => printed_form(rep.conjugation(), m, "conjugation")?,
        None => rep.conjugation().clone(),
    };
    let gr = match grade {
        Some(m) => printed_form(rep.grade(), m, "grade")?,
        None => rep.grade().clone(),
    };
    CliffordRep::with_grade(
        rep.p(),
        rep.q(),
        rep.generators().to_vec(),
        rep.reversion().clone(),
        cc,
        gr,
    )
}

fn adopt_printed_grade(rep: CliffordRep<Q>, grade: Matrix<Q>) -> Result<CliffordRep<Q>, Error> {
    adopt_printed(rep, None, Some(grade))
}

/// G₃,₂ = diag(−M_{1⊗i}, M_{1⊗i}).
pub fn grade32() -> Matrix<Q> {
    let mi = m1(Quaternion::i());
    Matrix::direct_sum(&[-&mi, mi])
}

/// [[0, M_{1⊗k}], [−M_{1⊗k}, 0]], the conjugation conjugator of (3,2) and (3,3).
pub fn breve_block_conjugator() -> Matrix<Q> {
    let mk = m1(Quaternion::k());
    let z = Matrix::zeros(4, 4);
    Matrix::from_quarters(&z, &mk, &-&mk, &z).expect("4x4 blocks")
}

/// C₄,₂ = Θ_C,I(i·M_{1⊗k}).
pub fn conjugator42() -> Matrix<Q> {
    let imk = m1(Quaternion::k()).map(|x| Complex::new(<Q as Scalar>::zero(), x.clone()));
    theta_c1(&imk)
}

/// C₁,₅ = iσ_y ⊗ σ_x over H.
pub fn conjugator15() -> Matrix<Quaternion<Q>> {
    kron(&named::j2(), &named::sigma_x())
}

fn build31() -> Result<(CliffordRep<Q>, Provenance), Error> {
    let rep = seed20(vec![named::sigma_z(), named::sigma_x()])?.ic_step()?;
    // M_{1⊗q}, q = (1+k)/√2, is (I + M_{1⊗k})/√2
    let p = m1(quat(1, 0, 0, 1));
    let rep = scaled_orthogonal_change(&rep, &p, 2)?;
    let rep = adopt_printed(rep, Some(m1(Quaternion::i())), Some(named::j_matrix(4)))?;
    let q = Quaternion::new(
        QSqrt2::inv_sqrt2(),
        QSqrt2::zero(),
        QSqrt2::zero(),
        QSqrt2::inv_sqrt2(),
    );
    let pm = m_tensor(&Quaternion::one(), &q);
    Ok((
        rep,
        provenance(
            Signature::new(2, 0),
            1,
            Some(AnyMatrix::RationalSqrt2(pm)),
            vec!["conjugation", "grade"],
        ),
    ))
}

fn build33() -> Result<(CliffordRep<Q>, Provenance), Error> {
    let rep = seed11()?.ic_step()?.ic_step()?;
    let p = Matrix::<Q>::permutation_columns(&[0, 3, 5, 6, 1, 2, 4, 7]);
    let rep = rep.change_basis(&p)?;
    let d = Matrix::direct_sum(&[named::identity(4), -named::identity::<Q>(4)]);
    let rep = adopt_printed(rep, Some(breve_block_conjugator()), Some(d))?;
    Ok((
        rep,
        provenance(
            Signature::new(1, 1),
            2,
            Some(AnyMatrix::Rational(p)),
            vec!["conjugation", "grade"],
        ),
    ))
}

fn build42() -> Result<(CliffordRep<Q>, Provenance), Error> {
    let rep = seed20(vec![named::sigma_x(), named::sigma_z()])?
        .ic_step()?
        .ic_step()?;
    let (sz, i2) = (named::sigma_z::<Q>(), named::identity::<Q>(2));
    let s = Matrix::direct_sum(&[sz.clone(), i2.clone(), i2, sz]);
    let rep = rep.change_basis(&s)?;
    let rep = adopt_printed(rep, Some(conjugator42()), Some(named::j_tilde(8)))?;
    Ok((
        rep,
        provenance(
            Signature::new(2, 0),
            2,
            Some(AnyMatrix::Rational(s)),
            vec!["conjugation", "grade"],
        ),
    ))
}

fn lift_c(m: &Matrix<Q>) -> Matrix<Complex<Q>> {
    m.map(|x| Complex::from_real(x.clone()))
}

/// Spin⁺(4,1) inside M(4,C).
pub fn spin41() -> Result<CatalogEntry<Complex<Q>>, Error> {
    let sy = named::sigma_y::<Q>();
    let seed = CliffordRep::new(
        3,
        0,
        vec![named::sigma_x(), sy, named::sigma_z()],
        form(BaseOp::ConjTranspose, named::identity(2))?,
        form(BaseOp::Transpose, named::j2())?,
    )?;
    let rep = seed.ic_step()?;
    // q = (1 − k)/√2
    let p = lift_c(&m1(quat(1, 0, 0, -1)));
    let rep = scaled_orthogonal_change(&rep, &p, 2)?;
    let rep = adopt_printed(
        rep,
        Some(lift_c(&m1(Quaternion::i()))),
        Some(lift_c(&m1(Quaternion::j()))),
    )?;
    let q = Quaternion::new(
        QSqrt2::inv_sqrt2(),
        QSqrt2::zero(),
        QSqrt2::zero(),
        -QSqrt2::inv_sqrt2(),
    );
    let pm = m_tensor(&Quaternion::one(), &q);
    Ok(CatalogEntry {
        signature: Signature::new(4, 1),
        rep,
        classical_group: ClassicalGroup::ThetaHConstrained,
        provenance: provenance(
            Signature::new(3, 0),
            1,
            Some(AnyMatrix::RationalSqrt2(pm)),
            vec!["conjugation", "grade"],
        ),
    })
}

fn quat_matrix(rows: [[Quaternion<Q>; 2]; 2]) -> Matrix<Quaternion<Q>> {
    Matrix::from_fn(2, 2, |r, c| rows[r][c].clone())
}

/// The Cl(0,4) generators, with Z₃ = [[0,k],[k,0]].
pub fn cl04_generators() -> Vec<Matrix<Quaternion<Q>>> {
    let z = Quaternion::zero;
    let off = |u: Quaternion<Q>| quat_matrix([[z(), u.clone()], [u, z()]]);
    vec![
        off(Quaternion::i()),
        off(Quaternion::j()),
        off(Quaternion::k()),
        quat_matrix([[z(), Quaternion::one()], [-Quaternion::one(), z()]]),
    ]
}

/// The Cl(0,4) generators exactly as printed, Z₃ = [[0,k],[i,0]].
pub fn cl04_generators_as_printed() -> Vec<Matrix<Quaternion<Q>>> {
    let mut gens = cl04_generators();
    let z = Quaternion::zero;
    gens[2] = quat_matrix([[z(), Quaternion::k()], [Quaternion::i(), z()]]);
    gens
}

/// Cl(0,4) = M(2,H): conjugation X ↦ X*, reversion X ↦ σ_zX*σ_z.
pub fn cl04(generators: Vec<Matrix<Quaternion<Q>>>) -> Result<CliffordRep<Quaternion<Q>>, Error> {
    CliffordRep::new(
        0,
        4,
        generators,
        form(BaseOp::ConjTranspose, named::sigma_z())?,
        form(BaseOp::ConjTranspose, named::identity(2))?,
    )
}

/// Spin⁺(1,5) inside M(4,H).
pub fn spin15() -> Result<CatalogEntry<Quaternion<Q>>, Error> {
    let rep = cl04(cl04_generators())?.ic_step()?;
    let p = Matrix::<Quaternion<Q>>::permutation_columns(&[0, 3, 1, 2]);
    let rep = rep.change_basis(&p)?;
    let d = Matrix::direct_sum(&[named::identity(2), -named::identity::<Quaternion<Q>>(2)]);
    let rep = adopt_printed(rep, Some(conjugator15()), Some(d))?;
    let pr = Matrix::<Q>::permutation_columns(&[0, 3, 1, 2]);
    Ok(CatalogEntry {
        signature: Signature::new(1, 5),
        rep,
        classical_group: ClassicalGroup::Sl2HBlock,
        provenance: provenance(
            Signature::new(0, 4),
            1,
            Some(AnyMatrix::Rational(pr)),
            vec!["conjugation", "grade"],
        ),
    })
}

/// The three conditions defining Spin⁺(p,q), or their linearizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// (i) fixed by the grade involution.
    Even,
    /// (ii) x·xᶜᶜ = I (group) or y + yᶜᶜ = 0 (algebra).
    Involution,
    /// (iii) x·v·xᶜᶜ (group) or [y, v] (algebra) is a 1-vector for every generator v.
    PreservesOneVectors,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Even => "even",
            Condition::Involution => "involution",
            Condition::PreservesOneVectors => "preserves_one_vectors",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub even: bool,
    pub involution: bool,
    pub preserves_one_vectors: bool,
    /// Generators whose image is not a 1-vector.
    pub non_preserved: Vec<usize>,
    /// Condition (iii) decides membership only when p + q ≥ 6; it is always evaluated.
    pub condition_iii_required: bool,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.even && self.involution && (self.preserves_one_vectors || !self.condition_iii_required)
    }

    /// Every condition that fails, required or not.
    pub fn failed(&self) -> Vec<Condition> {
        let mut out = Vec::new();
        if !self.even {
            out.push(Condition::Even);
        }
        if !self.involution {
            out.push(Condition::Involution);
        }
        if !self.preserves_one_vectors {
            out.push(Condition::PreservesOneVectors);
        }
        out
    }
}

fn check_shape<T: Scalar>(rep: &CliffordRep<T>, x: &Matrix<T>) -> Result<(), Error> {
    let n = rep.size();
    if x.shape() != (n, n) {
        return Err(Error::ShapeMismatch {
            op: "spin_membership",
            left: x.shape(),
            right: (n, n),
        });
    }
    Ok(())
}

pub fn spin_membership<T: Scalar>(
    entry: &CatalogEntry<T>,
    x: &Matrix<T>,
) -> Result<MembershipReport, Error> {
    spin_membership_tol(&entry.rep, x, DEFAULT_FLOAT_TOL)
}

/// Group membership on any representation; `tol` applies only to float rings.
pub fn spin_membership_tol<T: Scalar>(
    rep: &CliffordRep<T>,
    x: &Matrix<T>,
    tol: f64,
) -> Result<MembershipReport, Error> {
    check_shape(rep, x)?;
    let even = rep.apply_grade(x)?.approx_eq(x, tol);
    let x_cc = rep.apply_conjugation(x)?;
    let involution = (x * &x_cc).approx_eq(&Matrix::identity(rep.size()), tol);
    let mut non_preserved = Vec::new();
    for (i, v) in rep.generators().iter().enumerate() {
        let image = &(x * v) * &x_cc;
        if rep.one_vector_coordinates_tol(&image, tol)?.residual {
            non_preserved.push(i);
        }
    }
    Ok(MembershipReport {
        even,
        involution,
        preserves_one_vectors: non_preserved.is_empty(),
        non_preserved,
        condition_iii_required: rep.dimension() >= 6,
    })
}

pub fn spin_algebra_membership<T: Scalar>(
    entry: &CatalogEntry<T>,
    y: &Matrix<T>,
) -> Result<MembershipReport, Error> {
    spin_algebra_membership_tol(&entry.rep, y, DEFAULT_FLOAT_TOL)
}

/// The linearized conditions: y even, y + yᶜᶜ = 0, [y, v] a 1-vector.
pub fn spin_algebra_membership_tol<T: Scalar>(
    rep: &CliffordRep<T>,
    y: &Matrix<T>,
    tol: f64,
) -> Result<MembershipReport, Error> {
    check_shape(rep, y)?;
    let even = rep.apply_grade(y)?.approx_eq(y, tol);
    let involution =
        (y + &rep.apply_conjugation(y)?).approx_eq(&Matrix::zeros(rep.size(), rep.size()), tol);
    let mut non_preserved = Vec::new();
    for (i, v) in rep.generators().iter().enumerate() {
        if rep
            .one_vector_coordinates_tol(&y.commutator(v), tol)?
            .residual
        {
            non_preserved.push(i);
        }
    }
    Ok(MembershipReport {
        even,
        involution,
        preserves_one_vectors: non_preserved.is_empty(),
        non_preserved,
        condition_iii_required: rep.dimension() >= 6,
    })
}

/// An element of one of the classical groups, in its natural ring.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassicalElement {
    Real(Matrix<Q>),
    RealPair(Matrix<Q>, Matrix<Q>),
    Complex(Matrix<Complex<Q>>),
    Quaternion(Matrix<Quaternion<Q>>),
}

fn expect_shape<T: Scalar>(g: &Matrix<T>, n: usize, what: &'static str) -> Result<(), Error> {
    if g.shape() == (n, n) {
        Ok(())
    } else {
        Err(Error::RecognizerFailed(what))
    }
}

fn unit_det<T: crate::scalar::Field>(
    g: &Matrix<T>,
    n: usize,
    what: &'static str,
) -> Result<(), Error> {
    expect_shape(g, n, what)?;
    if g.determinant()? == T::one() {
        Ok(())
    } else {
        Err(Error::RecognizerFailed(what))
    }
}

/// Checks that `g` belongs to the classical group, exactly.
pub fn recognize(group: ClassicalGroup, g: &ClassicalElement) -> Result<(), Error> {
    use ClassicalElement as E;
    use ClassicalGroup as G;
    match (group, g) {
        (G::Sl2R, E::Real(m)) => unit_det(m, 2, "SL(2,R) needs a 2x2 real matrix of determinant 1"),
        (G::Sl2C, E::Complex(m)) => {
            unit_det(m, 2, "SL(2,C) needs a 2x2 complex matrix of determinant 1")
        }
        (G::Sl2RxSl2R, E::RealPair(a, b)) => {
            unit_det(
                a,
                2,
                "SL(2,R) x SL(2,R) needs two determinant-1 2x2 matrices",
            )?;
            unit_det(
                b,
                2,
                "SL(2,R) x SL(2,R) needs two determinant-1 2x2 matrices",
            )
        }
        (G::BreveSp4R, E::Real(z)) => {
            let what = "breve-Sp(4,R) needs Z^T M_{1(x)k} Z = M_{1(x)k}";
            expect_shape(z, 4, what)?;
            if is_breve_symplectic(z) {
                Ok(())
            } else {
                Err(Error::RecognizerFailed(what))
            }
        }
        (G::ThetaHConstrained, E::Quaternion(h)) => {
            let what =
                "needs a 2x2 quaternionic g with M_{1(x)i}^T X* M_{1(x)i} X = I for X = theta_H(g)";
            expect_shape(h, 2, what)?;
            let x = theta_h(h);
            let mi = lift_c(&m1(Quaternion::i()));
            if (&(&(&mi.transpose() * &x.conj_transpose()) * &mi) * &x).is_identity() {
                Ok(())
            } else {
                Err(Error::RecognizerFailed(what))
            }
        }
        (G::Su22Conjugate, E::Complex(g)) => {
            let what = "SU(2,2) needs g* I_{2,2} g = I_{2,2} and det g = 1";
            expect_shape(g, 4, what)?;
            let ipq = named::i_pq::<Complex<Q>>(2, 2);
            if &(&g.conj_transpose() * &ipq) * g != ipq {
                return Err(Error::RecognizerFailed(what));
            }
            unit_det(g, 4, what)
        }
        (G::Sl2HBlock, E::Quaternion(h)) => {
            let what = "SL(2,H) needs a 2x2 quaternionic matrix with theta_H determinant 1";
            expect_shape(h, 2, what)?;
            if quaternionic_determinant(h)? == <Q as Scalar>::one() {
                Ok(())
            } else {
                Err(Error::RecognizerFailed(what))
            }
        }
        (G::Sl4RBlock, E::Real(a)) => {
            unit_det(a, 4, "SL(4,R) needs a 4x4 real matrix of determinant 1")
        }
        _ => Err(Error::RecognizerFailed(
            "element kind does not match the classical group",
        )),
    }
}

pub fn is_breve_symplectic<R: RealScalar>(z: &Matrix<R>) -> bool {
    let mk = m_tensor(&Quaternion::one(), &Quaternion::k());
    z.shape() == (4, 4) && &(&z.transpose() * &mk) * z == mk
}

/// The (2,1) pattern: [[a·I₂, b·σ_z], [c·σ_z, d·I₂]].
pub fn embed21(g: &Matrix<Q>) -> Matrix<Q> {
    let (i2, sz) = (named::identity::<Q>(2), named::sigma_z::<Q>());
    let blk = |r: usize, c: usize| {
        let base = if r == c { &i2 } else { &sz };
        base.scale(g.get(r, c))
    };
    Matrix::from_quarters(&blk(0, 0), &blk(0, 1), &blk(1, 0), &blk(1, 1)).expect("2x2 blocks")
}

/// The concentric (2,2) pattern: g₁ on rows/cols {1,4}, g₂ on {2,3}.
pub fn embed22(g1: &Matrix<Q>, g2: &Matrix<Q>) -> Matrix<Q> {
    Matrix::from_fn(4, 4, |r, c| match (r, c) {
        (0 | 3, 0 | 3) => g1.get(r / 3, c / 3).clone(),
        (1 | 2, 1 | 2) => g2.get(r - 1, c - 1).clone(),
        _ => <Q as Scalar>::zero(),
    })
}

/// (g₁, g₂) back from a concentric 4×4 matrix, if it has that shape.
pub fn concentric_blocks(x: &Matrix<Q>) -> Option<(Matrix<Q>, Matrix<Q>)> {
    if x.shape() != (4, 4) {
        return None;
    }
    let g1 = Matrix::from_fn(2, 2, |r, c| x.get(3 * r, 3 * c).clone());
    let g2 = Matrix::from_fn(2, 2, |r, c| x.get(r + 1, c + 1).clone());
    (embed22(&g1, &g2) == *x).then_some((g1, g2))
}

/// U with U*·(i·M_{1⊗k})·U = I₂,₂.
pub fn su22_conjugator() -> Matrix<Complex<Q>> {
    let h = <Q as RealScalar>::from_ratio(1, 2);
    let z = <Q as Scalar>::zero();
    let re = |s: i64| Complex::new(h.clone() * rq(s), z.clone());
    let im = |s: i64| Complex::new(z.clone(), h.clone() * rq(s));
    let rows = vec![
        vec![re(1), re(1), re(1), re(1)],
        vec![im(-1), im(1), im(1), im(-1)],
        vec![re(1), re(-1), re(1), re(-1)],
        vec![im(-1), im(-1), im(1), im(1)],
    ];
    Matrix::from_rows(rows).expect("4x4")
}

/// Θ_C,I(U·g·U*) for g ∈ SU(2,2).
pub fn embed42(g: &Matrix<Complex<Q>>) -> Matrix<Q> {
    let u = su22_conjugator();
    theta_c1(&(&(&u * g) * &u.conj_transpose()))
}

/// diag(g, σ_x·(g*)⁻¹·σ_x).
pub fn embed15(g: &Matrix<Quaternion<Q>>) -> Result<Matrix<Quaternion<Q>>, Error> {
    let sx = named::sigma_x::<Quaternion<Q>>();
    let se = &(&sx * &g.conj_transpose().inverse()?) * &sx;
    Ok(Matrix::direct_sum(&[g.clone(), se]))
}

/// diag(A, −M_{1⊗k}·A⁻ᵀ·M_{1⊗k}).
pub fn embed33(a: &Matrix<Q>) -> Result<Matrix<Q>, Error> {
    let mk = m1(Quaternion::k());
    let d = -(&(&mk * &a.transpose().inverse()?) * &mk);
    Ok(Matrix::direct_sum(&[a.clone(), d]))
}

/// The spin-group matrix of a classical-group element; the element is recognized first.
pub fn embed_classical(entry: &AnyEntry, g: &ClassicalElement) -> Result<AnyMatrix, Error> {
    recognize(entry.classical_group(), g)?;
    use ClassicalElement as E;
    Ok(match (entry.classical_group(), g) {
        (ClassicalGroup::Sl2R, E::Real(m)) => AnyMatrix::Rational(embed21(m)),
        (ClassicalGroup::Sl2C, E::Complex(m)) => AnyMatrix::Rational(theta_c2(m)),
        (ClassicalGroup::Sl2RxSl2R, E::RealPair(a, b)) => AnyMatrix::Rational(embed22(a, b)),
        (ClassicalGroup::BreveSp4R, E::Real(z)) => AnyMatrix::Rational(lambda32(z)?),
        (ClassicalGroup::ThetaHConstrained, E::Quaternion(h)) => AnyMatrix::Complex(theta_h(h)),
        (ClassicalGroup::Su22Conjugate, E::Complex(m)) => AnyMatrix::Rational(embed42(m)),
        (ClassicalGroup::Sl2HBlock, E::Quaternion(h)) => AnyMatrix::Quaternion(embed15(h)?),
        (ClassicalGroup::Sl4RBlock, E::Real(a)) => AnyMatrix::Rational(embed33(a)?),
        _ => {
            return Err(Error::RecognizerFailed(
                "element kind does not match the classical group",
            ))
        }
    })
}

/// M_{1⊗q} with q̄kq = j; conjugation by it carries breve-Sp(4,R) onto Sp(4,R).
pub fn breve_to_standard_sp4() -> Result<Matrix<QSqrt2>, Error> {
    let q = conjugating_quaternion(&Quaternion::k(), &Quaternion::j())?;
    Ok(m_tensor(&Quaternion::one(), &q))
}

/// Pᵀ·Z·P with P = [`breve_to_standard_sp4`].
pub fn breve_to_standard(z: &Matrix<Q>) -> Result<Matrix<QSqrt2>, Error> {
    let p = breve_to_standard_sp4()?;
    let zl = z.map(|x| QSqrt2::from(x.clone()));
    Ok(&(&p.transpose() * &zl) * &p)
}

/// The six scalar conditions on Z = [[a,b,c,d],[e,f,g,h],[i,j,k,l],[m,n,p,q]], as
/// left side minus right side; all zero iff Z is breve-symplectic.
pub fn six_conditions<R: RealScalar>(z: &Matrix<R>) -> Result<[R; 6], Error> {
    if z.shape() != (4, 4) {
        return Err(Error::ShapeMismatch {
            op: "six_conditions",
            left: z.shape(),
            right: (4, 4),
        });
    }
    let v = |r: usize, c: usize| z.get(r, c).clone();
    let (a, b, c, d) = (v(0, 0), v(0, 1), v(0, 2), v(0, 3));
    let (e, f, g, h) = (v(1, 0), v(1, 1), v(1, 2), v(1, 3));
    let (i, j, k, l) = (v(2, 0), v(2, 1), v(2, 2), v(2, 3));
    let (m, n, p, q) = (v(3, 0), v(3, 1), v(3, 2), v(3, 3));
    let one = R::one();
    Ok([
        a.clone() * q.clone() - d.clone() * m.clone() + i.clone() * h.clone()
            - e.clone() * l.clone()
            - one.clone(),
        b.clone() * q.clone() - f.clone() * l.clone() + h.clone() * j.clone()
            - d.clone() * n.clone(),
        k.clone() * h - d * p.clone() + q * c.clone() - g.clone() * l,
        c.clone() * m.clone() - g.clone() * i.clone() + k.clone() * e.clone()
            - a.clone() * p.clone(),
        c * n.clone() - g * j.clone() + k * f.clone() - b.clone() * p - one,
        f * i - b * m + a * n - j * e,
    ])
}

/// A bivector product XₖXₗ keyed by 0-based (k, l).
pub type LabelledProduct = ((usize, usize), Matrix<Quaternion<Q>>);

/// The fifteen (1,5) bivector products as printed.
pub fn spin15_printed_bivectors() -> Vec<LabelledProduct> {
    type H = Quaternion<Q>;
    let i2 = named::identity::<H>(2);
    let sx = named::sigma_x::<H>();
    let sz = named::sigma_z::<H>();
    let j2 = named::j2::<H>();
    let (qi, qj, qk) = (H::i(), H::j(), H::k());
    let z = H::zero;
    let skew = |u: &H| quat_matrix([[z(), -u.clone()], [u.clone(), z()]]);
    let t = |a: &Matrix<H>, b: &Matrix<H>| kron(a, b);
    vec![
        ((0, 1), t(&i2, &skew(&qi))),
        ((0, 2), t(&i2, &skew(&qj))),
        ((0, 3), t(&i2, &skew(&qk))),
        ((0, 4), -t(&sx, &sx)),
        ((0, 5), t(&i2, &-&sz)),
        ((1, 2), t(&i2, &i2.scale(&qk))),
        ((1, 3), -t(&i2, &i2.scale(&qj))),
        ((1, 4), -t(&sz, &sz.scale(&qi))),
        ((1, 5), t(&i2, &sx.scale(&qi))),
        ((2, 3), t(&i2, &i2.scale(&qi))),
        ((2, 4), -t(&sz, &sz.scale(&qj))),
        ((2, 5), t(&i2, &sx.scale(&qj))),
        ((3, 4), -t(&sz, &sz.scale(&qk))),
        ((3, 5), t(&i2, &sx.scale(&qk))),
        ((4, 5), t(&sz, &j2)),
    ]
}
