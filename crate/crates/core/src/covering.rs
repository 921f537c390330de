//! The double cover Φ: Spin⁺(p,q) → SO⁺(p,q) and its linearization Ψ, with the
//! explicit Ψ₃,₂ table and inverses of Ψ.

use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::{CliffordRep, DEFAULT_FLOAT_TOL};
use crate::embeddings::lambda32;
use crate::error::Error;
use crate::matrix::{kron_all, trace_pairing, Matrix};
use crate::named;
use crate::quat_tensor::m_tensor;
use crate::quaternion::Quaternion;
use crate::scalar::{RealScalar, Scalar, Q};
use crate::spin_catalog::{breve_block_conjugator, CatalogEntry, Signature};

/// The (p+q)×(p+q) matrix of v ↦ g·v·gᶜᶜ or v ↦ [y, v] in the generator basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverResult<R> {
    pub matrix: Matrix<R>,
    /// Per generator: whether the image had a component outside the 1-vectors.
    pub residuals: Vec<bool>,
    pub residual_norms: Vec<f64>,
}

impl<R> CoverResult<R> {
    pub fn is_clean(&self) -> bool {
        !self.residuals.iter().any(|r| *r)
    }

    fn first_residual(&self) -> Option<usize> {
        self.residuals.iter().position(|r| *r)
    }
}

fn coordinates_of<T: Scalar>(
    rep: &CliffordRep<T>,
    images: impl Iterator<Item = Matrix<T>>,
    tol: f64,
) -> Result<CoverResult<T::Real>, Error> {
    let n = rep.dimension();
    let mut columns = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    let mut residual_norms = Vec::with_capacity(n);
    for image in images {
        let c = rep.one_vector_coordinates_tol(&image, tol)?;
        columns.push(c.coefficients);
        residuals.push(c.residual);
        residual_norms.push(c.residual_norm);
    }
    let matrix = Matrix::from_fn(n, n, |r, c| columns[c][r].clone());
    Ok(CoverResult {
        matrix,
        residuals,
        residual_norms,
    })
}

/// Φ(g) with per-generator residual flags; no error when g fails to preserve 1-vectors.
pub fn cover_group_flags<T: Scalar>(
    rep: &CliffordRep<T>,
    g: &Matrix<T>,
    tol: f64,
) -> Result<CoverResult<T::Real>, Error> {
    let g_cc = rep.apply_conjugation(g)?;
    coordinates_of(rep, rep.generators().iter().map(|x| &(g * x) * &g_cc), tol)
}

/// Φ(g): column i holds the coordinates of g·Xᵢ·gᶜᶜ.
pub fn cover_group<T: Scalar>(
    entry: &CatalogEntry<T>,
    g: &Matrix<T>,
) -> Result<CoverResult<T::Real>, Error> {
    cover_group_rep(&entry.rep, g, DEFAULT_FLOAT_TOL)
}

pub fn cover_group_rep<T: Scalar>(
    rep: &CliffordRep<T>,
    g: &Matrix<T>,
    tol: f64,
) -> Result<CoverResult<T::Real>, Error> {
    let out = cover_group_flags(rep, g, tol)?;
    match out.first_residual() {
        Some(generator) => Err(Error::NotOneVectorPreserving { generator }),
        None => Ok(out),
    }
}

/// Ψ(y): column i holds the coordinates of y·Xᵢ − Xᵢ·y.
pub fn cover_algebra<T: Scalar>(
    entry: &CatalogEntry<T>,
    y: &Matrix<T>,
) -> Result<CoverResult<T::Real>, Error> {
    cover_algebra_rep(&entry.rep, y, DEFAULT_FLOAT_TOL)
}

pub fn cover_algebra_rep<T: Scalar>(
    rep: &CliffordRep<T>,
    y: &Matrix<T>,
    tol: f64,
) -> Result<CoverResult<T::Real>, Error> {
    if bivector_coordinates(rep, y, tol)?.1 {
        return Err(Error::NotInBivectorSpan);
    }
    coordinates_of(rep, rep.generators().iter().map(|x| y.commutator(x)), tol)
}

/// Coordinates of y in the bivector basis, from the real Gram system, and whether
/// anything outside the span is left over.
pub fn bivector_coordinates<T: Scalar>(
    rep: &CliffordRep<T>,
    y: &Matrix<T>,
    tol: f64,
) -> Result<(Vec<T::Real>, bool), Error> {
    let basis = rep.bivector_basis();
    let m = basis.len();
    let mut gram = Vec::with_capacity(m * m);
    for a in &basis {
        for b in &basis {
            gram.push(trace_pairing(a, b)?.re());
        }
    }
    let gram = Matrix::new(m, m, gram)?.inverse()?;
    let rhs: Vec<T::Real> = basis
        .iter()
        .map(|b| trace_pairing(b, y).map(|t| t.re()))
        .collect::<Result<_, _>>()?;
    let coeffs: Vec<T::Real> = (0..m)
        .map(|i| {
            (0..m).fold(T::Real::zero(), |acc, j| {
                acc + gram.get(i, j).clone() * rhs[j].clone()
            })
        })
        .collect();
    let mut rest = y.clone();
    for (c, b) in coeffs.iter().zip(&basis) {
        rest = &rest - &b.scale_real(c);
    }
    let outside = !rest.data().iter().all(|v| v.approx_zero(tol));
    Ok((coeffs, outside))
}

/// mᵀ·I_{p,q} + I_{p,q}·m = 0.
pub fn is_in_so<R: RealScalar>(m: &Matrix<R>, sig: Signature, tol: f64) -> bool {
    let n = sig.dimension();
    let ipq = named::i_pq::<R>(sig.p, sig.q);
    m.shape() == (n, n)
        && (&(&m.transpose() * &ipq) + &(&ipq * m)).approx_eq(&Matrix::zeros(n, n), tol)
}

/// ‖mᵀ·I_{p,q}·m − I_{p,q}‖_∞ (entrywise maximum).
pub fn orthogonality_defect<R: RealScalar>(m: &Matrix<R>, sig: Signature) -> f64 {
    let ipq = named::i_pq::<R>(sig.p, sig.q);
    (&(&(&m.transpose() * &ipq) * m) - &ipq).max_abs()
}

/// det of the leading p×p block is positive: the computable proxy for the identity component.
pub fn in_identity_component<R: RealScalar>(m: &Matrix<R>, sig: Signature) -> Result<bool, Error> {
    if sig.p == 0 {
        return Ok(true);
    }
    let d = m.submatrix(0, 0, sig.p, sig.p).determinant()?;
    Ok(!d.is_negative() && !d.is_zero())
}

/// Strictly-upper entries of an so(p,q) matrix, which determine it.
pub(crate) fn upper_entries<R: RealScalar>(m: &Matrix<R>) -> Vec<R> {
    let n = m.rows();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).clone())
        .collect()
}

/// Ψ⁻¹ for a catalog representation: the exact linear system built from the Ψ-images
/// of the bivector basis, inverted once.
#[derive(Debug, Clone)]
pub struct AlgebraCoverInverse<T: Scalar> {
    signature: Signature,
    basis: Vec<Matrix<T>>,
    solve: Matrix<T::Real>,
    tol: f64,
}

impl<T: Scalar> AlgebraCoverInverse<T> {
    pub fn new(rep: &CliffordRep<T>, tol: f64) -> Result<Self, Error> {
        let basis = rep.bivector_basis();
        let images: Vec<Matrix<T::Real>> = basis
            .iter()
            .map(|b| cover_algebra_rep(rep, b, tol).map(|r| r.matrix))
            .collect::<Result<_, _>>()?;
        Self::from_images(Signature::new(rep.p(), rep.q()), basis, &images, tol)
    }

    /// Uses given preimages and their Ψ-images; the images must be a basis of so(p,q).
    pub fn from_images(
        signature: Signature,
        basis: Vec<Matrix<T>>,
        images: &[Matrix<T::Real>],
        tol: f64,
    ) -> Result<Self, Error> {
        let m = basis.len();
        let cols: Vec<Vec<T::Real>> = images.iter().map(upper_entries).collect();
        if cols.iter().any(|c| c.len() != m) {
            return Err(Error::DataLength {
                rows: m,
                cols: m,
                len: cols.len(),
            });
        }
        let a = Matrix::from_fn(m, m, |r, c| cols[c][r].clone());
        Ok(AlgebraCoverInverse {
            signature,
            basis,
            solve: a.inverse()?,
            tol,
        })
    }

    pub fn basis(&self) -> &[Matrix<T>] {
        &self.basis
    }

    /// The inverse of the (upper entries of images) system matrix.
    pub fn solve_matrix(&self) -> &Matrix<T::Real> {
        &self.solve
    }

    /// Coefficients of x in the image basis.
    pub fn coefficients(&self, x: &Matrix<T::Real>) -> Result<Vec<T::Real>, Error> {
        if !is_in_so(x, self.signature, self.tol) {
            return Err(Error::NotInSo {
                p: self.signature.p,
                q: self.signature.q,
            });
        }
        let b = upper_entries(x);
        let m = self.basis.len();
        Ok((0..m)
            .map(|i| {
                (0..m).fold(T::Real::zero(), |acc, j| {
                    acc + self.solve.get(i, j).clone() * b[j].clone()
                })
            })
            .collect())
    }

    pub fn apply(&self, x: &Matrix<T::Real>) -> Result<Matrix<T>, Error> {
        let coeffs = self.coefficients(x)?;
        let (r, c) = self.basis[0].shape();
        Ok(coeffs
            .iter()
            .zip(&self.basis)
            .fold(Matrix::zeros(r, c), |acc, (k, b)| &acc + &b.scale_real(k)))
    }
}

/// Pauli-type factors appearing in the printed Λ words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I2,
    X,
    /// iσ_y = J₂.
    IY,
    Z,
}

impl Pauli {
    pub fn matrix<R: RealScalar>(self) -> Matrix<R> {
        match self {
            Pauli::I2 => named::identity(2),
            Pauli::X => named::sigma_x(),
            Pauli::IY => named::j2(),
            Pauli::Z => named::sigma_z(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pauli::I2 => "I2",
            Pauli::X => "sx",
            Pauli::IY => "isy",
            Pauli::Z => "sz",
        }
    }
}

/// ±M_{a⊗b}, a and b indexing 1, i, j, k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedTensor {
    pub sign: i64,
    pub left: usize,
    pub right: usize,
}

const UNIT_NAMES: [&str; 4] = ["1", "i", "j", "k"];

impl SignedTensor {
    pub fn matrix(self) -> Matrix<Q> {
        let b = Quaternion::<Q>::basis();
        m_tensor(&b[self.left], &b[self.right]).scale(&<Q as RealScalar>::from_ratio(self.sign, 1))
    }

    pub fn label(self) -> alloc::string::String {
        let s = if self.sign < 0 { "-" } else { "" };
        alloc::format!(
            "{s}M_{{{}(x){}}}",
            UNIT_NAMES[self.left],
            UNIT_NAMES[self.right]
        )
    }
}

/// A printed table row. `m_terms` lists (coefficient, a, b) for coefficient·e_a·e_bᵀ, 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct PrintedPsi32Row {
    pub w: SignedTensor,
    pub z: SignedTensor,
    pub lambda_sign: i64,
    pub lambda_word: [Pauli; 3],
    pub m_terms: [(i64, usize, usize); 2],
}

const fn t(sign: i64, left: usize, right: usize) -> SignedTensor {
    SignedTensor { sign, left, right }
}

/// The ten rows as printed, in order.
pub fn printed_psi32_rows() -> Vec<PrintedPsi32Row> {
    use Pauli::*;
    let row = |w, z, lambda_sign, lambda_word, m_terms| PrintedPsi32Row {
        w,
        z,
        lambda_sign,
        lambda_word,
        m_terms,
    };
    vec![
        row(
            t(1, 0, 0),
            t(1, 0, 3),
            1,
            [X, IY, I2],
            [(2, 5, 4), (-2, 4, 5)],
        ),
        row(
            t(1, 1, 1),
            t(1, 1, 2),
            -1,
            [IY, IY, I2],
            [(-2, 4, 3), (-2, 3, 4)],
        ),
        row(
            t(1, 2, 2),
            t(-1, 2, 1),
            1,
            [X, X, I2],
            [(2, 5, 2), (2, 2, 5)],
        ),
        row(
            t(1, 3, 3),
            t(-1, 3, 0),
            1,
            [IY, X, I2],
            [(2, 2, 3), (-2, 3, 2)],
        ),
        row(
            t(1, 1, 2),
            t(-1, 1, 1),
            -1,
            [Z, I2, I2],
            [(-2, 5, 3), (-2, 3, 5)],
        ),
        row(
            t(1, 1, 3),
            t(-1, 1, 0),
            1,
            [I2, IY, Z],
            [(2, 1, 2), (-2, 2, 1)],
        ),
        row(
            t(1, 2, 1),
            t(-1, 2, 2),
            1,
            [I2, Z, I2],
            [(2, 4, 2), (-2, 2, 4)],
        ),
        row(
            t(1, 2, 3),
            t(-1, 2, 0),
            1,
            [IY, Z, Z],
            [(2, 1, 3), (-2, 3, 1)],
        ),
        row(
            t(1, 3, 1),
            t(1, 3, 2),
            1,
            [I2, X, Z],
            [(-2, 4, 1), (-2, 4, 1)],
        ),
        row(
            t(1, 3, 2),
            t(-1, 3, 1),
            1,
            [X, Z, Z],
            [(2, 5, 1), (-2, 1, 5)],
        ),
    ]
}

impl PrintedPsi32Row {
    pub fn lambda_matrix(&self) -> Matrix<Q> {
        let [a, b, c] = self.lambda_word.map(Pauli::matrix::<Q>);
        kron_all(&[&a, &b, &c]).scale(&<Q as RealScalar>::from_ratio(self.lambda_sign, 1))
    }

    pub fn lambda_label(&self) -> alloc::string::String {
        let s = if self.lambda_sign < 0 { "-" } else { "" };
        let [a, b, c] = self.lambda_word.map(Pauli::name);
        alloc::format!("{s}{a}(x){b}(x){c}")
    }

    pub fn m_matrix(&self) -> Matrix<Q> {
        self.m_terms
            .iter()
            .fold(Matrix::zeros(5, 5), |acc, &(k, a, b)| {
                &acc + &named::unit_matrix::<Q>(5, a - 1, b - 1)
                    .scale(&<Q as RealScalar>::from_ratio(k, 1))
            })
    }
}

/// One row of the recomputed table.
#[derive(Debug, Clone, PartialEq)]
pub struct Psi32Row {
    /// 1-based row number.
    pub index: usize,
    pub printed: PrintedPsi32Row,
    pub z: Matrix<Q>,
    pub lambda: Matrix<Q>,
    pub m_computed: Matrix<Q>,
    pub m_printed: Matrix<Q>,
    /// Printed Z equals M_{1⊗k}·W.
    pub z_matches_w: bool,
    /// Printed Λ word equals Λ(Z).
    pub lambda_matches: bool,
    /// Printed M column equals Ψ(Λ(Z)).
    pub m_matches: bool,
}

/// The Ψ₃,₂ table with every M column recomputed by [`cover_algebra`] from the printed Z.
pub fn psi32_table(entry: &CatalogEntry<Q>) -> Result<Vec<Psi32Row>, Error> {
    if entry.signature != Signature::new(3, 2) {
        return Err(Error::UnsupportedSignature {
            p: entry.signature.p,
            q: entry.signature.q,
        });
    }
    let mk = m_tensor(&Quaternion::<Q>::one(), &Quaternion::k());
    let mut rows = Vec::with_capacity(10);
    for (i, printed) in printed_psi32_rows().into_iter().enumerate() {
        let z = printed.z.matrix();
        let lambda = lambda32(&z)?;
        let m_computed = cover_algebra(entry, &lambda)?.matrix;
        let m_printed = printed.m_matrix();
        rows.push(Psi32Row {
            index: i + 1,
            z_matches_w: &mk * &printed.w.matrix() == z,
            lambda_matches: printed.lambda_matrix() == lambda,
            m_matches: m_printed == m_computed,
            printed,
            z,
            lambda,
            m_computed,
            m_printed,
        });
    }
    Ok(rows)
}

/// Ψ₃,₂⁻¹ onto breve-sp(4,R), solved once against the recomputed M basis.
#[derive(Debug, Clone)]
pub struct Psi32Inverse {
    inner: AlgebraCoverInverse<Q>,
}

impl Psi32Inverse {
    pub fn new(entry: &CatalogEntry<Q>) -> Result<Self, Error> {
        let rows = psi32_table(entry)?;
        let zs: Vec<Matrix<Q>> = rows.iter().map(|r| r.z.clone()).collect();
        let ms: Vec<Matrix<Q>> = rows.iter().map(|r| r.m_computed.clone()).collect();
        Ok(Psi32Inverse {
            inner: AlgebraCoverInverse::from_images(Signature::new(3, 2), zs, &ms, 0.0)?,
        })
    }

    /// The 4×4 Z with Ψ₃,₂(Λ(Z)) = x.
    pub fn apply(&self, x: &Matrix<Q>) -> Result<Matrix<Q>, Error> {
        self.inner.apply(x)
    }

    /// Coefficients of x in the recomputed M basis (rows 1..10).
    pub fn coefficients(&self, x: &Matrix<Q>) -> Result<Vec<Q>, Error> {
        self.inner.coefficients(x)
    }

    /// The Z basis (printed column II) as f64, with coefficients for float inputs.
    pub fn to_float(&self) -> Psi32InverseFloat {
        Psi32InverseFloat {
            basis: self.inner.basis.iter().map(|b| b.to_float()).collect(),
            solve: self.inner.solve.to_float(),
        }
    }
}

/// Float version of [`Psi32Inverse`], sharing the exact solve.
#[derive(Debug, Clone)]
pub struct Psi32InverseFloat {
    basis: Vec<Matrix<f64>>,
    solve: Matrix<f64>,
}

impl Psi32InverseFloat {
    pub fn apply(&self, x: &Matrix<f64>, tol: f64) -> Result<Matrix<f64>, Error> {
        if !is_in_so(x, Signature::new(3, 2), tol) {
            return Err(Error::NotInSo { p: 3, q: 2 });
        }
        let b = upper_entries(x);
        let mut out = Matrix::zeros(4, 4);
        for (i, z) in self.basis.iter().enumerate() {
            let c: f64 = (0..b.len()).map(|j| self.solve.get(i, j) * b[j]).sum();
            out = &out + &z.scale(&c);
        }
        Ok(out)
    }
}

/// Φ₃,₂(Λ(E)) following the transpose route: Mᵢ = Λ(E)·Xᵢ·[C₃,₂ᵀ·Λ(Eᵀ)·C₃,₂],
/// with coefficients read off by trace pairing.
pub fn cover32_transpose_route<R: RealScalar + FromRational>(
    rep: &CliffordRep<R>,
    e: &Matrix<R>,
) -> Result<Matrix<R>, Error> {
    let c: Matrix<R> = breve_block_conjugator().map(R::from_ratio_q);
    let left = lambda32(e)?;
    let right = &(&c.transpose() * &lambda32(&e.transpose())?) * &c;
    let gens = rep.generators();
    let n = gens.len();
    let mut out = Matrix::zeros(n, n);
    for (i, x) in gens.iter().enumerate() {
        let mi = &(&left * x) * &right;
        for (j, xj) in gens.iter().enumerate() {
            let g =
                trace_pairing(xj, &mi)? * trace_pairing(xj, xj)?.inv().ok_or(Error::Singular)?;
            out = out.with_entry(j, i, g);
        }
    }
    Ok(out)
}

/// Lossless conversion of exact rationals into a real field.
pub trait FromRational {
    fn from_ratio_q(q: &Q) -> Self;
}

impl FromRational for Q {
    fn from_ratio_q(q: &Q) -> Self {
        q.clone()
    }
}

impl FromRational for f64 {
    fn from_ratio_q(q: &Q) -> Self {
        q.to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_bivector, random_bivector_cayley, random_rational_matrix};
    use crate::spin_catalog::{real_entry, CATALOG_SIGNATURES};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e32() -> CatalogEntry<Q> {
        real_entry(Signature::new(3, 2)).unwrap()
    }

    fn rot45(angle_sign: i64) -> Matrix<Q> {
        // 2(e5e4ᵀ − e4e5ᵀ) scaled by angle_sign
        let a = named::unit_matrix::<Q>(5, 4, 3);
        (&a - &a.transpose()).scale(&<Q as RealScalar>::from_ratio(2 * angle_sign, 1))
    }

    #[test]
    fn identity_and_kernel() {
        let e = e32();
        let id = Matrix::<Q>::identity(8);
        assert!(cover_group(&e, &id).unwrap().matrix.is_identity());
        assert!(cover_group(&e, &-&id).unwrap().matrix.is_identity());
        assert!(cover_algebra(&e, &Matrix::zeros(8, 8))
            .unwrap()
            .matrix
            .is_zero());
    }

    #[test]
    fn row_one_and_six() {
        let e = e32();
        let rows = psi32_table(&e).unwrap();
        assert_eq!(rows[0].m_computed, rot45(1));
        assert!(rows[0].lambda_matches && rows[0].m_matches);
        let a = named::unit_matrix::<Q>(5, 0, 1);
        assert_eq!(
            rows[5].m_computed,
            (&a - &a.transpose()).scale(&<Q as RealScalar>::from_ratio(2, 1))
        );
    }

    #[test]
    fn table_flags() {
        let rows = psi32_table(&e32()).unwrap();
        let m_bad: Vec<usize> = rows
            .iter()
            .filter(|r| !r.m_matches)
            .map(|r| r.index)
            .collect();
        assert_eq!(m_bad, vec![7, 9, 10]);
        let lambda_bad: Vec<usize> = rows
            .iter()
            .filter(|r| !r.lambda_matches)
            .map(|r| r.index)
            .collect();
        assert_eq!(lambda_bad, vec![3, 7]);
        let z_bad: Vec<usize> = rows
            .iter()
            .filter(|r| !r.z_matches_w)
            .map(|r| r.index)
            .collect();
        assert_eq!(z_bad, vec![7]);
    }

    #[test]
    fn computed_images_are_in_so32_and_independent() {
        let rows = psi32_table(&e32()).unwrap();
        let sig = Signature::new(3, 2);
        for r in &rows {
            assert!(is_in_so(&r.m_computed, sig, 0.0), "row {}", r.index);
        }
        let flat: Vec<Vec<Q>> = rows.iter().map(|r| r.m_computed.data().to_vec()).collect();
        assert_eq!(crate::clifford::rank(flat), 10);
    }

    #[test]
    fn psi32_inverse_round_trip() {
        let e = e32();
        let inv = Psi32Inverse::new(&e).unwrap();
        assert!(inv.apply(&Matrix::zeros(5, 5)).unwrap().is_zero());
        assert_eq!(
            inv.apply(&rot45(1)).unwrap(),
            m_tensor(&Quaternion::one(), &Quaternion::k())
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ipq = named::i_pq::<Q>(3, 2);
        for _ in 0..10 {
            let k = random_rational_matrix(&mut rng, 5, 5);
            let x = &ipq * &(&k - &k.transpose());
            let z = inv.apply(&x).unwrap();
            assert_eq!(cover_algebra(&e, &lambda32(&z).unwrap()).unwrap().matrix, x);
        }
        assert!(matches!(
            inv.apply(&Matrix::identity(5)),
            Err(Error::NotInSo { .. })
        ));
    }

    #[test]
    fn homomorphism_exact_on_real_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for sig in [
            Signature::new(2, 1),
            Signature::new(3, 1),
            Signature::new(2, 2),
            Signature::new(3, 2),
        ] {
            let e = real_entry(sig).unwrap();
            let g = random_bivector_cayley(&mut rng, &e.rep).unwrap();
            let h = random_bivector_cayley(&mut rng, &e.rep).unwrap();
            let fg = cover_group(&e, &g).unwrap().matrix;
            let fh = cover_group(&e, &h).unwrap().matrix;
            assert_eq!(cover_group(&e, &(&g * &h)).unwrap().matrix, &fg * &fh);
            assert_eq!(orthogonality_defect(&fg, sig), 0.0);
            assert!(in_identity_component(&fg, sig).unwrap());
        }
    }

    #[test]
    fn algebra_images_independent_everywhere() {
        for sig in CATALOG_SIGNATURES {
            let entry = crate::spin_catalog::catalog(sig).unwrap();
            let rank = match &entry {
                crate::spin_catalog::AnyEntry::Real(e) => images_rank(&e.rep),
                crate::spin_catalog::AnyEntry::Complex(e) => images_rank(&e.rep),
                crate::spin_catalog::AnyEntry::Quaternionic(e) => images_rank(&e.rep),
            };
            let n = sig.dimension();
            assert_eq!(rank, n * (n - 1) / 2, "{sig}");
        }
    }

    fn images_rank<T: Scalar<Real = Q>>(rep: &CliffordRep<T>) -> usize {
        let flat: Vec<Vec<Q>> = rep
            .bivector_basis()
            .iter()
            .map(|b| {
                cover_algebra_rep(rep, b, 0.0)
                    .unwrap()
                    .matrix
                    .data()
                    .to_vec()
            })
            .collect();
        crate::clifford::rank(flat)
    }

    #[test]
    fn non_bivector_rejected() {
        let e = e32();
        assert_eq!(
            cover_algebra(&e, &e.rep.generators()[0].clone()),
            Err(Error::NotInBivectorSpan)
        );
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let y = random_bivector(&mut rng, &e.rep);
        assert!(cover_algebra(&e, &y).is_ok());
    }

    #[test]
    fn transpose_route_agrees() {
        let e = e32();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let inv = Psi32Inverse::new(&e).unwrap();
        let ipq = named::i_pq::<Q>(3, 2);
        let k = random_rational_matrix(&mut rng, 5, 5);
        let z = inv.apply(&(&ipq * &(&k - &k.transpose()))).unwrap();
        let g = crate::sampling::cayley(&z).unwrap();
        let direct = cover_group(&e, &lambda32(&g).unwrap()).unwrap().matrix;
        assert_eq!(cover32_transpose_route(&e.rep, &g).unwrap(), direct);
    }
}
