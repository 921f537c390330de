//! Exponentials: the small-matrix kernel, an independent series oracle, and the
//! spin-cover route X ↦ Φ(exp(Ψ⁻¹(X))) for X ∈ so(p,q).

use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::{CliffordRep, DEFAULT_FLOAT_TOL};
use crate::complex::Complex;
use crate::covering::{
    cover32_transpose_route, cover_group_flags, is_in_so, orthogonality_defect, upper_entries,
    AlgebraCoverInverse, Psi32Inverse, Psi32InverseFloat,
};
use crate::embeddings::lambda32;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::quaternion::Quaternion;
use crate::scalar::{Scalar, ToFloat, Q};
use crate::spin_catalog::{catalog, real_entry, AnyEntry, Signature};

pub const DEFAULT_EXPM_TOL: f64 = 1e-12;

const MAX_TERMS: usize = 64;

/// e^y by scaling and squaring with an adaptive Taylor sum.
///
/// Nilpotent inputs are detected first and summed without scaling, so integer
/// nilpotent matrices come out exact.
pub fn expm_small<T: Scalar<Real = f64>>(y: &Matrix<T>, tol: f64) -> Result<Matrix<T>, Error> {
    if !y.is_square() {
        return Err(Error::NotSquare {
            rows: y.rows(),
            cols: y.cols(),
        });
    }
    if y.data().iter().any(|v| !v.magnitude().is_finite()) {
        return Err(Error::NonFinite);
    }
    let n = y.rows();
    if let Some(sum) = nilpotent_series(y) {
        return Ok(sum);
    }

    let mut s = 0u32;
    let mut norm = y.norm_one();
    while norm > 0.5 {
        norm /= 2.0;
        s += 1;
    }
    let scaled = y.scale_real(&(1.0 / (1u64 << s.min(63)) as f64));
    let cutoff = tol.min(f64::EPSILON);
    let mut sum = Matrix::<T>::identity(n);
    let mut term = Matrix::<T>::identity(n);
    for k in 1..MAX_TERMS {
        term = (&term * &scaled).scale_real(&(1.0 / k as f64));
        sum = &sum + &term;
        if term.max_abs() <= cutoff * sum.max_abs().max(1.0) {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    if sum.data().iter().any(|v| !v.magnitude().is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(sum)
}

fn nilpotent_series<T: Scalar<Real = f64>>(y: &Matrix<T>) -> Option<Matrix<T>> {
    let n = y.rows();
    let mut sum = Matrix::<T>::identity(n);
    let mut power = Matrix::<T>::identity(n);
    let mut fact = 1.0;
    for k in 1..=n {
        power = &power * y;
        if power.is_zero() {
            return Some(sum);
        }
        fact *= k as f64;
        sum = &sum + &power.scale_real(&(1.0 / fact));
    }
    power = &power * y;
    power.is_zero().then_some(sum)
}

/// Reference exponential on a row-major n×n buffer: fixed-degree Horner Taylor
/// polynomial after scaling by the ∞-norm. Shares no code with [`expm_small`].
pub fn expm_oracle(x: &Matrix<f64>) -> Result<Matrix<f64>, Error> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let n = x.rows();
    let data = oracle_dense(x.data(), n)?;
    Matrix::new(n, n, data)
}

const ORACLE_DEGREE: usize = 20;

fn oracle_dense(a: &[f64], n: usize) -> Result<Vec<f64>, Error> {
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let inf_norm = (0..n)
        .map(|i| a[i * n..(i + 1) * n].iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scale = 1.0;
    while inf_norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let b: Vec<f64> = a.iter().map(|v| v * scale).collect();
    let eye = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };

    // Horner: p = I + b/1 (I + b/2 (I + ... (I + b/d)))
    let mut p: Vec<f64> = (0..n * n).map(|k| eye(k / n, k % n)).collect();
    for d in (1..=ORACLE_DEGREE).rev() {
        let bp = dense_mul(&b, &p, n);
        for k in 0..n * n {
            p[k] = eye(k / n, k % n) + bp[k] / d as f64;
        }
    }
    for _ in 0..squarings {
        p = dense_mul(&p, &p, n);
    }
    if p.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(p)
}

fn dense_mul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExpmMethod {
    #[default]
    SpinCover,
    DirectOracle,
}

impl ExpmMethod {
    pub fn name(self) -> &'static str {
        match self {
            ExpmMethod::SpinCover => "spin_cover",
            ExpmMethod::DirectOracle => "direct_oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExpmInput {
    Float(Matrix<f64>),
    Exact(Matrix<Q>),
}

impl ExpmInput {
    fn to_float(&self) -> Matrix<f64> {
        match self {
            ExpmInput::Float(m) => m.clone(),
            ExpmInput::Exact(m) => m.to_float(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpmRequest {
    pub signature: Signature,
    pub x: ExpmInput,
    pub tolerance: f64,
    pub method: ExpmMethod,
    /// Also run the other method and report the largest entrywise difference.
    pub compare: bool,
}

impl ExpmRequest {
    pub fn new(signature: Signature, x: Matrix<f64>) -> Self {
        ExpmRequest {
            signature,
            x: ExpmInput::Float(x),
            tolerance: DEFAULT_EXPM_TOL,
            method: ExpmMethod::SpinCover,
            compare: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpmDiagnostics {
    pub method: ExpmMethod,
    /// ‖MᵀI_{p,q}M − I_{p,q}‖_∞.
    pub orthogonality_residual: f64,
    /// |det M − 1|.
    pub det_defect: f64,
    /// One flag per generator from the 1-vector expansion (spin cover only).
    pub residual_flags: Vec<bool>,
    pub comparison_max_diff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpmOutput {
    pub result: Matrix<f64>,
    pub diagnostics: ExpmDiagnostics,
}

#[derive(Debug, Clone)]
struct FloatCover<T: Scalar<Real = f64>> {
    rep: CliffordRep<T>,
    basis: Vec<Matrix<T>>,
    solve: Matrix<f64>,
}

impl<T: Scalar<Real = f64>> FloatCover<T> {
    fn build<E>(rep: &CliffordRep<E>) -> Result<Self, Error>
    where
        E: Scalar<Real = Q> + ToFloat<Float = T>,
    {
        let inv = AlgebraCoverInverse::new(rep, 0.0)?;
        Ok(FloatCover {
            rep: rep.to_float(),
            basis: inv.basis().iter().map(Matrix::to_float).collect(),
            solve: inv.solve_matrix().to_float(),
        })
    }

    fn pull_back(&self, x: &Matrix<f64>) -> Matrix<T> {
        let b = upper_entries(x);
        let (r, c) = self.basis[0].shape();
        let mut y = Matrix::zeros(r, c);
        for (i, z) in self.basis.iter().enumerate() {
            let k: f64 = b
                .iter()
                .enumerate()
                .map(|(j, bj)| self.solve.get(i, j) * bj)
                .sum();
            y = &y + &z.scale_real(&k);
        }
        y
    }

    fn exp(&self, x: &Matrix<f64>, tol: f64) -> Result<(Matrix<f64>, Vec<bool>), Error> {
        let g = expm_small(&self.pull_back(x), tol)?;
        let cover = cover_group_flags(&self.rep, &g, tol.max(DEFAULT_FLOAT_TOL))?;
        Ok((cover.matrix, cover.residuals))
    }
}

#[derive(Debug, Clone)]
enum Route {
    /// (3,2): Z = Ψ₃,₂⁻¹(x) at 4×4, e^Z, then the transpose formula.
    Breve32 {
        rep: CliffordRep<f64>,
        inverse: Psi32InverseFloat,
    },
    Real(FloatCover<f64>),
    Complex(FloatCover<Complex<f64>>),
    Quaternionic(FloatCover<Quaternion<f64>>),
}

/// Precomputed Ψ⁻¹ for one signature, for batches of exponentials.
#[derive(Debug, Clone)]
pub struct SpinCoverEngine {
    signature: Signature,
    route: Route,
}

impl SpinCoverEngine {
    pub fn new(signature: Signature) -> Result<Self, Error> {
        let route = if signature == Signature::new(3, 2) {
            let entry = real_entry(signature)?;
            Route::Breve32 {
                inverse: Psi32Inverse::new(&entry)?.to_float(),
                rep: entry.rep.to_float(),
            }
        } else {
            match catalog(signature)? {
                AnyEntry::Real(e) => Route::Real(FloatCover::build(&e.rep)?),
                AnyEntry::Complex(e) => Route::Complex(FloatCover::build(&e.rep)?),
                AnyEntry::Quaternionic(e) => Route::Quaternionic(FloatCover::build(&e.rep)?),
            }
        };
        Ok(SpinCoverEngine { signature, route })
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    /// e^x through the spin cover, with per-generator residual flags.
    pub fn exp(&self, x: &Matrix<f64>, tol: f64) -> Result<(Matrix<f64>, Vec<bool>), Error> {
        self.check(x, tol)?;
        match &self.route {
            Route::Breve32 { rep, inverse } => {
                let z = inverse.apply(x, tol)?;
                let ez = expm_small(&z, tol)?;
                let flags =
                    cover_group_flags(rep, &lambda32(&ez)?, tol.max(DEFAULT_FLOAT_TOL))?.residuals;
                Ok((cover32_transpose_route(rep, &ez)?, flags))
            }
            Route::Real(c) => c.exp(x, tol),
            Route::Complex(c) => c.exp(x, tol),
            Route::Quaternionic(c) => c.exp(x, tol),
        }
    }

    fn check(&self, x: &Matrix<f64>, tol: f64) -> Result<(), Error> {
        let sig = self.signature;
        if x.shape() != (sig.dimension(), sig.dimension()) {
            return Err(Error::ShapeMismatch {
                op: "expm_so",
                left: x.shape(),
                right: (sig.dimension(), sig.dimension()),
            });
        }
        if x.data().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !is_in_so(x, sig, tol) {
            return Err(Error::NotInSo { p: sig.p, q: sig.q });
        }
        Ok(())
    }

    pub fn run(&self, req: &ExpmRequest) -> Result<ExpmOutput, Error> {
        let sig = req.signature;
        if sig != self.signature {
            return Err(Error::UnsupportedSignature { p: sig.p, q: sig.q });
        }
        if let ExpmInput::Exact(m) = &req.x {
            if !is_in_so(m, sig, 0.0) {
                return Err(Error::NotInSo { p: sig.p, q: sig.q });
            }
        }
        let x = req.x.to_float();
        self.check(&x, req.tolerance)?;
        let oracle = || expm_oracle(&x);
        let (result, residual_flags, other) = match req.method {
            ExpmMethod::SpinCover => {
                let (m, flags) = self.exp(&x, req.tolerance)?;
                let other = if req.compare { Some(oracle()?) } else { None };
                (m, flags, other)
            }
            ExpmMethod::DirectOracle => {
                let other = if req.compare {
                    Some(self.exp(&x, req.tolerance)?.0)
                } else {
                    None
                };
                (oracle()?, Vec::new(), other)
            }
        };
        let det_defect = (result.determinant()? - 1.0).abs();
        let diagnostics = ExpmDiagnostics {
            method: req.method,
            orthogonality_residual: orthogonality_defect(&result, sig),
            det_defect,
            residual_flags,
            comparison_max_diff: other.map(|o| (&o - &result).max_abs()),
        };
        Ok(ExpmOutput {
            result,
            diagnostics,
        })
    }
}

/// One-shot [`SpinCoverEngine::run`]; batches should keep an engine.
pub fn expm_so(req: &ExpmRequest) -> Result<ExpmOutput, Error> {
    SpinCoverEngine::new(req.signature)?.run(req)
}
