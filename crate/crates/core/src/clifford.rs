//! Concrete Clifford representations: generators, involution forms, the IC step,
//! changes of 1-vector basis, bivectors and 1-vector coordinates.

use alloc::vec::Vec;

use crate::error::Error;
use crate::matrix::{block_transpose, trace_pairing, Matrix};
use crate::named;
use crate::scalar::{RealScalar, Scalar, ToFloat};

/// φ in X ↦ M⁻¹·φ(X)·M.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseOp {
    Identity,
    Transpose,
    ConjTranspose,
    EntrywiseConj,
}

impl BaseOp {
    pub fn apply<T: Scalar>(self, x: &Matrix<T>) -> Matrix<T> {
        match self {
            BaseOp::Identity => x.clone(),
            BaseOp::Transpose => x.transpose(),
            BaseOp::ConjTranspose => x.conj_transpose(),
            BaseOp::EntrywiseConj => x.entrywise_conj(),
        }
    }

    /// Reverses products.
    pub fn is_anti(self) -> bool {
        matches!(self, BaseOp::Transpose | BaseOp::ConjTranspose)
    }

    /// self ∘ inner.
    pub fn then_after(self, inner: BaseOp) -> BaseOp {
        use BaseOp::*;
        match (self, inner) {
            (Identity, x) | (x, Identity) => x,
            (a, b) if a == b => Identity,
            (Transpose, ConjTranspose) | (ConjTranspose, Transpose) => EntrywiseConj,
            (Transpose, EntrywiseConj) | (EntrywiseConj, Transpose) => ConjTranspose,
            (ConjTranspose, EntrywiseConj) | (EntrywiseConj, ConjTranspose) => Transpose,
            _ => unreachable!("all pairs covered"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseOp::Identity => "identity",
            BaseOp::Transpose => "transpose",
            BaseOp::ConjTranspose => "conj_transpose",
            BaseOp::EntrywiseConj => "entrywise_conj",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            BaseOp::Identity,
            BaseOp::Transpose,
            BaseOp::ConjTranspose,
            BaseOp::EntrywiseConj,
        ]
        .into_iter()
        .find(|b| b.name() == s)
    }
}

/// X ↦ M⁻¹·φ(X)·M. The inverse of M is kept alongside it.
#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionForm<T> {
    base_op: BaseOp,
    conjugator: Matrix<T>,
    conjugator_inv: Matrix<T>,
}

impl<T: Scalar> InvolutionForm<T> {
    pub fn new(base_op: BaseOp, conjugator: Matrix<T>) -> Result<Self, Error> {
        let conjugator_inv = conjugator.inverse()?;
        Ok(InvolutionForm {
            base_op,
            conjugator,
            conjugator_inv,
        })
    }

    pub fn base_op(&self) -> BaseOp {
        self.base_op
    }

    pub fn conjugator(&self) -> &Matrix<T> {
        &self.conjugator
    }

    pub fn apply(&self, x: &Matrix<T>) -> Result<Matrix<T>, Error> {
        if x.shape() != self.conjugator.shape() {
            return Err(Error::ShapeMismatch {
                op: "apply_involution",
                left: x.shape(),
                right: self.conjugator.shape(),
            });
        }
        Ok(&(&self.conjugator_inv * &self.base_op.apply(x)) * &self.conjugator)
    }

    /// self ∘ inner as a single form.
    pub fn compose(&self, inner: &InvolutionForm<T>) -> Result<InvolutionForm<T>, Error> {
        let phi_m2 = self.base_op.apply(&inner.conjugator);
        let conj = if self.base_op.is_anti() {
            &phi_m2.inverse()? * &self.conjugator
        } else {
            &phi_m2 * &self.conjugator
        };
        InvolutionForm::new(self.base_op.then_after(inner.base_op), conj)
    }

    /// Same base op and conjugators equal up to a nonzero central scalar.
    pub fn equivalent(&self, other: &InvolutionForm<T>) -> bool {
        if self.base_op != other.base_op || self.conjugator.shape() != other.conjugator.shape() {
            return false;
        }
        let a = self.conjugator.data();
        let b = other.conjugator.data();
        let Some(k) = a.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if b[k].is_zero() {
            return false;
        }
        // λ with b = λ a, taken as b_k a_k⁻¹; must be real for the rings used
        let Some(ak_inv) = a[k].inv() else {
            return false;
        };
        let lambda = b[k].clone() * ak_inv;
        let lambda_is_real = T::from_real(lambda.re()) == lambda;
        lambda_is_real
            && a.iter()
                .zip(b)
                .all(|(x, y)| lambda.clone() * x.clone() == *y)
    }

    /// Form expressed in the basis Yᵢ = P⁻¹XᵢP.
    pub fn change_basis(&self, p: &Matrix<T>) -> Result<InvolutionForm<T>, Error> {
        let phi_p = self.base_op.apply(p);
        let d = if self.base_op.is_anti() {
            &(&phi_p * &self.conjugator) * p
        } else {
            &(&phi_p.inverse()? * &self.conjugator) * p
        };
        InvolutionForm::new(self.base_op, d)
    }

    pub fn map_ring<S: Scalar>(&self, f: impl Fn(&T) -> S) -> InvolutionForm<S> {
        InvolutionForm {
            base_op: self.base_op,
            conjugator: self.conjugator.map(&f),
            conjugator_inv: self.conjugator_inv.map(&f),
        }
    }
}

/// Cl(p,q) realised by matrices: generators e₁..e_p (square +I) then f₁..f_q (square −I).
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordRep<T> {
    p: usize,
    q: usize,
    generators: Vec<Matrix<T>>,
    reversion: InvolutionForm<T>,
    conjugation: InvolutionForm<T>,
    grade: InvolutionForm<T>,
}

/// A single failed identity, with the indices involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    ShapeMismatch {
        generator: usize,
    },
    Anticommutation {
        i: usize,
        j: usize,
    },
    ReversionFixes {
        generator: usize,
    },
    ConjugationNegates {
        generator: usize,
    },
    GradeNegates {
        generator: usize,
    },
    GradeComposition {
        monomial: usize,
    },
    ReversionProduct {
        i: usize,
        j: usize,
    },
    ConjugationProduct {
        i: usize,
        j: usize,
    },
    NotInvolutive {
        form: &'static str,
        generator: usize,
    },
    TraceOrthogonality {
        i: usize,
        j: usize,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.checks += 1;
        if !ok {
            self.failures.push(failure());
        }
    }
}

/// Coefficients of a matrix in the 1-vector basis, and whether anything is left over.
#[derive(Debug, Clone, PartialEq)]
pub struct OneVectorCoordinates<R> {
    pub coefficients: Vec<R>,
    pub residual: bool,
    pub residual_norm: f64,
}

impl<T: Scalar> CliffordRep<T> {
    /// Assembles a representation; the grade form is derived as reversion ∘ conjugation.
    pub fn new(
        p: usize,
        q: usize,
        generators: Vec<Matrix<T>>,
        reversion: InvolutionForm<T>,
        conjugation: InvolutionForm<T>,
    ) -> Result<Self, Error> {
        let grade = reversion.compose(&conjugation)?;
        Self::with_grade(p, q, generators, reversion, conjugation, grade)
    }

    /// Assembles a representation with an explicitly given grade form (checked by verification).
    pub fn with_grade(
        p: usize,
        q: usize,
        generators: Vec<Matrix<T>>,
        reversion: InvolutionForm<T>,
        conjugation: InvolutionForm<T>,
        grade: InvolutionForm<T>,
    ) -> Result<Self, Error> {
        if generators.len() != p + q || generators.is_empty() {
            return Err(Error::DataLength {
                rows: p,
                cols: q,
                len: generators.len(),
            });
        }
        let shape = reversion.conjugator().shape();
        if let Some(g) = generators.iter().find(|g| g.shape() != shape) {
            return Err(Error::ShapeMismatch {
                op: "CliffordRep::new",
                left: g.shape(),
                right: shape,
            });
        }
        Ok(CliffordRep {
            p,
            q,
            generators,
            reversion,
            conjugation,
            grade,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn dimension(&self) -> usize {
        self.p + self.q
    }
    pub fn size(&self) -> usize {
        self.generators[0].rows()
    }
    pub fn generators(&self) -> &[Matrix<T>] {
        &self.generators
    }
    pub fn reversion(&self) -> &InvolutionForm<T> {
        &self.reversion
    }
    pub fn conjugation(&self) -> &InvolutionForm<T> {
        &self.conjugation
    }
    pub fn grade(&self) -> &InvolutionForm<T> {
        &self.grade
    }

    /// η_ii: +1 for the first p generators, −1 after.
    pub fn square_sign(&self, i: usize) -> i64 {
        if i < self.p {
            1
        } else {
            -1
        }
    }

    /// Product of the generators selected by the bits of `mask`, in increasing index order.
    pub fn monomial(&self, mask: usize) -> Matrix<T> {
        let mut out = Matrix::identity(self.size());
        for (i, g) in self.generators.iter().enumerate() {
            if mask & (1 << i) != 0 {
                out = &out * g;
            }
        }
        out
    }

    /// All 2^(p+q) monomials, indexed by bitmask.
    pub fn monomials(&self) -> Vec<Matrix<T>> {
        (0..1usize << self.dimension())
            .map(|m| self.monomial(m))
            .collect()
    }

    /// XₖXₗ for k < l, in lexicographic order.
    pub fn bivector_basis(&self) -> Vec<Matrix<T>> {
        let n = self.dimension();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for k in 0..n {
            for l in k + 1..n {
                out.push(&self.generators[k] * &self.generators[l]);
            }
        }
        out
    }

    /// Index pairs matching [`Self::bivector_basis`].
    pub fn bivector_labels(&self) -> Vec<(usize, usize)> {
        let n = self.dimension();
        (0..n)
            .flat_map(|k| (k + 1..n).map(move |l| (k, l)))
            .collect()
    }

    pub fn apply_reversion(&self, x: &Matrix<T>) -> Result<Matrix<T>, Error> {
        self.reversion.apply(x)
    }
    pub fn apply_conjugation(&self, x: &Matrix<T>) -> Result<Matrix<T>, Error> {
        self.conjugation.apply(x)
    }
    pub fn apply_grade(&self, x: &Matrix<T>) -> Result<Matrix<T>, Error> {
        self.grade.apply(x)
    }

    /// grade(x) = rev(cc(x)).
    pub fn grade_matches_composition(&self, x: &Matrix<T>) -> Result<bool, Error> {
        Ok(self.grade.apply(x)? == self.reversion.apply(&self.conjugation.apply(x)?)?)
    }

    /// Exact check of every defining identity; failures are itemised.
    pub fn verify_generators(&self) -> VerificationReport {
        let mut report = VerificationReport::default();
        let n = self.dimension();
        let size = self.size();
        let shape = self.reversion.conjugator().shape();
        for (i, g) in self.generators.iter().enumerate() {
            report.record(g.shape() == shape, || Failure::ShapeMismatch {
                generator: i,
            });
        }
        if !report.passed() {
            return report;
        }
        let id = Matrix::<T>::identity(size);
        for i in 0..n {
            for j in i..n {
                let expect = if i == j {
                    id.scale(&T::from_i64(2 * self.square_sign(i)))
                } else {
                    Matrix::zeros(size, size)
                };
                let ac = self.generators[i].anticommutator(&self.generators[j]);
                report.record(ac == expect, || Failure::Anticommutation { i, j });
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            let rev = self.reversion.apply(g).expect("shape checked");
            let cc = self.conjugation.apply(g).expect("shape checked");
            let gr = self.grade.apply(g).expect("shape checked");
            report.record(&rev == g, || Failure::ReversionFixes { generator: i });
            report.record(cc == -g, || Failure::ConjugationNegates { generator: i });
            report.record(gr == -g, || Failure::GradeNegates { generator: i });
            for (name, form) in [
                ("reversion", &self.reversion),
                ("conjugation", &self.conjugation),
                ("grade", &self.grade),
            ] {
                let twice = form
                    .apply(&form.apply(&(&self.generators[(i + 1) % n] * g)).unwrap())
                    .unwrap();
                report.record(twice == &self.generators[(i + 1) % n] * g, || {
                    Failure::NotInvolutive {
                        form: name,
                        generator: i,
                    }
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&self.generators[i], &self.generators[j]);
                let ab = a * b;
                let lhs = self.reversion.apply(&ab).unwrap();
                let rhs = &self.reversion.apply(b).unwrap() * &self.reversion.apply(a).unwrap();
                report.record(lhs == rhs, || Failure::ReversionProduct { i, j });
                let lhs = self.conjugation.apply(&ab).unwrap();
                let rhs = &self.conjugation.apply(b).unwrap() * &self.conjugation.apply(a).unwrap();
                report.record(lhs == rhs, || Failure::ConjugationProduct { i, j });
            }
        }
        for (mask, m) in self.monomials().iter().enumerate() {
            let ok = self.grade_matches_composition(m).unwrap_or(false);
            report.record(ok, || Failure::GradeComposition { monomial: mask });
        }
        report
    }

    /// Generators are pairwise trace-orthogonal with Re Tr(XᵢᵀXᵢ) equal to the matrix size.
    pub fn verify_trace_orthogonality(&self) -> VerificationReport {
        let mut report = VerificationReport::default();
        let size = T::Real::from_ratio(self.size() as i64, 1);
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate().skip(i) {
                let t = trace_pairing(a, b).map(|t| t.re());
                let expect = if i == j {
                    size.clone()
                } else {
                    T::Real::zero()
                };
                report.record(t.as_ref() == Ok(&expect), || Failure::TraceOrthogonality {
                    i,
                    j,
                });
            }
        }
        report
    }

    /// The IC step Cl(p,q) → Cl(p+1,q+1) at doubled size.
    pub fn ic_step(&self) -> Result<CliffordRep<T>, Error> {
        for form in [&self.reversion, &self.conjugation] {
            if !form.base_op.is_anti() {
                return Err(Error::NotAntiAutomorphism(form.base_op.name()));
            }
        }
        let n = self.size();
        let z = Matrix::<T>::zeros(n, n);
        let sz = named::sigma_z::<T>();
        let lift = |x: &Matrix<T>| crate::matrix::kron(&sz, x);
        let mut gens = Vec::with_capacity(self.dimension() + 2);
        gens.extend(self.generators[..self.p].iter().map(lift));
        gens.push(named::k_matrix(2 * n));
        gens.extend(self.generators[self.p..].iter().map(lift));
        gens.push(named::j_matrix(2 * n));
        let r = self.reversion.conjugator();
        let c = self.conjugation.conjugator();
        let conjugation = InvolutionForm::new(
            self.reversion.base_op,
            Matrix::from_quarters(&z, r, &-r, &z)?,
        )?;
        let reversion = InvolutionForm::new(
            self.conjugation.base_op,
            Matrix::from_quarters(&z, c, c, &z)?,
        )?;
        CliffordRep::new(self.p + 1, self.q + 1, gens, reversion, conjugation)
    }

    /// Generators Yᵢ = P⁻¹XᵢP with the involution conjugators carried along.
    pub fn change_basis(&self, pmat: &Matrix<T>) -> Result<CliffordRep<T>, Error> {
        if pmat.shape() != self.reversion.conjugator().shape() {
            return Err(Error::ShapeMismatch {
                op: "change_basis",
                left: pmat.shape(),
                right: self.reversion.conjugator().shape(),
            });
        }
        let p_inv = pmat.inverse()?;
        let gens = self
            .generators
            .iter()
            .map(|x| &(&p_inv * x) * pmat)
            .collect();
        CliffordRep::with_grade(
            self.p,
            self.q,
            gens,
            self.reversion.change_basis(pmat)?,
            self.conjugation.change_basis(pmat)?,
            self.grade.change_basis(pmat)?,
        )
    }

    /// Expansion in the 1-vector basis; exact rings demand an exact fit, float rings use `tol`.
    pub fn one_vector_coordinates_tol(
        &self,
        m: &Matrix<T>,
        tol: f64,
    ) -> Result<OneVectorCoordinates<T::Real>, Error> {
        let mut rest = m.clone();
        let mut coefficients = Vec::with_capacity(self.dimension());
        for x in &self.generators {
            let num = trace_pairing(x, m)?.re();
            let den = trace_pairing(x, x)?.re();
            let g = num * den.inv().ok_or(Error::Singular)?;
            rest = &rest - &x.scale_real(&g);
            coefficients.push(g);
        }
        let residual_norm = rest.max_abs();
        let residual = !rest.data().iter().all(|v| v.approx_zero(tol));
        Ok(OneVectorCoordinates {
            coefficients,
            residual,
            residual_norm,
        })
    }

    pub fn one_vector_coordinates(
        &self,
        m: &Matrix<T>,
    ) -> Result<OneVectorCoordinates<T::Real>, Error> {
        self.one_vector_coordinates_tol(m, DEFAULT_FLOAT_TOL)
    }

    /// Σ cᵢXᵢ.
    pub fn one_vector(&self, coeffs: &[T::Real]) -> Matrix<T> {
        let mut out = Matrix::zeros(self.size(), self.size());
        for (c, x) in coeffs.iter().zip(&self.generators) {
            out = &out + &x.scale_real(c);
        }
        out
    }

    pub fn map_ring<S: Scalar>(&self, f: impl Fn(&T) -> S) -> CliffordRep<S> {
        CliffordRep {
            p: self.p,
            q: self.q,
            generators: self.generators.iter().map(|g| g.map(&f)).collect(),
            reversion: self.reversion.map_ring(&f),
            conjugation: self.conjugation.map_ring(&f),
            grade: self.grade.map_ring(&f),
        }
    }

    pub fn to_float(&self) -> CliffordRep<T::Float>
    where
        T: ToFloat,
    {
        self.map_ring(ToFloat::to_float)
    }
}

/// Tolerance for residual tests on float representations.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

/// The block formulas of the IC step, written against the old representation.
///
/// For X = [[A,B],[C,D]] in the new algebra, Xᶜᶜ = [[Dʳᵉᵛ,−Bʳᵉᵛ],[−Cʳᵉᵛ,Aʳᵉᵛ]] and
/// Xʳᵉᵛ = [[Dᶜᶜ,Bᶜᶜ],[Cᶜᶜ,Aᶜᶜ]], with the involutions of the old algebra applied blockwise.
pub struct IcBlockFormulas<'a, T> {
    pub old: &'a CliffordRep<T>,
}

impl<T: Scalar> IcBlockFormulas<'_, T> {
    pub fn conjugation_direct(&self, x: &Matrix<T>) -> Result<Matrix<T>, Error> {
        let [a, b, c, d] = x.quarters()?;
        let rev = |m: &Matrix<T>| self.old.reversion.apply(m);
        Matrix::from_quarters(&rev(&d)?, &-&rev(&b)?, &-&rev(&c)?, &rev(&a)?)
    }

    pub fn reversion_direct(&self, x: &Matrix<T>) -> Result<Matrix<T>, Error> {
        let [a, b, c, d] = x.quarters()?;
        let cc = |m: &Matrix<T>| self.old.conjugation.apply(m);
        Matrix::from_quarters(&cc(&d)?, &cc(&b)?, &cc(&c)?, &cc(&a)?)
    }

    /// Xᶜᶜ = J⁻¹·[blockwise rev of X]ᴮᵀ·J.
    pub fn conjugation_block_transpose(&self, x: &Matrix<T>) -> Result<Matrix<T>, Error> {
        let y = self.blockwise(x, &self.old.reversion)?;
        let j = named::j_matrix::<T>(x.rows());
        Ok(&(&j.inverse()? * &block_transpose(&y)?) * &j)
    }

    /// Xʳᵉᵛ = K⁻¹·[blockwise cc of X]ᴮᵀ·K.
    pub fn reversion_block_transpose(&self, x: &Matrix<T>) -> Result<Matrix<T>, Error> {
        let y = self.blockwise(x, &self.old.conjugation)?;
        let k = named::k_matrix::<T>(x.rows());
        Ok(&(&k.inverse()? * &block_transpose(&y)?) * &k)
    }

    fn blockwise(&self, x: &Matrix<T>, form: &InvolutionForm<T>) -> Result<Matrix<T>, Error> {
        let [a, b, c, d] = x.quarters()?;
        Matrix::from_quarters(
            &form.apply(&a)?,
            &form.apply(&b)?,
            &form.apply(&c)?,
            &form.apply(&d)?,
        )
    }
}

/// Real linear span dimension of a family of matrices (exact ranks over Q for rational data).
pub fn real_rank<T: Scalar>(family: &[Matrix<T>]) -> usize
where
    T::Real: RealScalar,
{
    let rows: Vec<Vec<T::Real>> = family.iter().map(real_coordinates).collect();
    rank(rows)
}

/// All real components of a matrix's entries, flattened.
pub fn real_coordinates<T: Scalar>(m: &Matrix<T>) -> Vec<T::Real> {
    m.data().iter().flat_map(Scalar::real_parts).collect()
}

/// Row rank by Gaussian elimination over a real field.
pub fn rank<R: RealScalar>(mut rows: Vec<Vec<R>>) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].approx_zero(RANK_TOL)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone() * inv.clone();
            for (v, pv) in row[col..width].iter_mut().zip(&pivot[col..width]) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
        rank += 1;
    }
    rank
}

const RANK_TOL: f64 = 1e-10;
