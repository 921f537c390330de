//! Dense matrices over a [`Scalar`] ring, with Kronecker and block utilities.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::scalar::{Field, Scalar, ToFloat};

/// Row-major dense matrix. Values are immutable in spirit: operations return fresh matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, Error> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DataLength {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Integer entries, row by row. Panics on ragged input; meant for constants.
    pub fn from_ints<const N: usize>(rows: &[[i64; N]]) -> Self {
        Self::from_fn(rows.len(), N, |i, j| T::from_i64(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DataLength {
                rows: r,
                cols: c,
                len: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[T] {
        &self.data
    }
    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, v: T) -> Self {
        let mut out = self.clone();
        out.data[i * self.cols + j] = v;
        out
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&T) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// X* : transpose combined with entrywise conjugation.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn entrywise_conj(&self) -> Self {
        self.map(T::conj)
    }

    /// s·X (scalar on the left).
    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    /// r·X for r in the real subfield (central in every ring used here).
    pub fn scale_real(&self, r: &T::Real) -> Self {
        let s = T::from_real(r.clone());
        self.map(|x| x.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Entrywise comparison, exact for exact rings and within `tol` otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.shape() == other.shape()
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a.clone() - b.clone()).approx_zero(tol))
    }

    /// max |x_ij|.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(T::magnitude).fold(0.0, f64::max)
    }

    /// Induced 1-norm: largest column sum of magnitudes.
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self.get(i, j).magnitude())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.same_shape(other, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.same_shape(other, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    let a = &self.data[i * self.cols + k];
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * other.data[k * other.cols + j].clone();
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<(), Error> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    /// Non-negative integer power of a square matrix.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Commutator XY − YX.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Anticommutator XY + YX.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// Inverse over the ring; Gauss-Jordan for fields, the θ_H detour for quaternions.
    pub fn inverse(&self) -> Result<Self, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        T::matrix_inverse(self).ok_or(Error::Singular)
    }

    /// Sub-block of size `h`×`w` starting at (r0, c0).
    pub fn submatrix(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(h, w, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Views a 2n×2n matrix as [[A,B],[C,D]] with n×n blocks.
    pub fn quarters(&self) -> Result<[Self; 4], Error> {
        if !self.rows.is_multiple_of(2) || !self.cols.is_multiple_of(2) {
            return Err(Error::OddDimension {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (h, w) = (self.rows / 2, self.cols / 2);
        Ok([
            self.submatrix(0, 0, h, w),
            self.submatrix(0, w, h, w),
            self.submatrix(h, 0, h, w),
            self.submatrix(h, w, h, w),
        ])
    }

    /// Assembles [[a,b],[c,d]].
    pub fn from_quarters(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, Error> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::ShapeMismatch {
                op: "from_quarters",
                left: a.shape(),
                right: d.shape(),
            });
        }
        let (h, w) = (a.rows, a.cols);
        Ok(Self::from_fn(
            a.rows + c.rows,
            a.cols + b.cols,
            |i, j| match (i < h, j < w) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - w).clone(),
                (false, true) => c.get(i - h, j).clone(),
                (false, false) => d.get(i - h, j - w).clone(),
            },
        ))
    }

    /// Grid of equally sized square blocks, `n`×`n` of them.
    pub fn from_block_grid(blocks: &[Vec<Self>]) -> Result<Self, Error> {
        let n = blocks.len();
        let b = blocks
            .first()
            .and_then(|r| r.first())
            .map(|m| m.rows)
            .unwrap_or(0);
        for row in blocks {
            if row.len() != n || row.iter().any(|m| m.shape() != (b, b)) {
                return Err(Error::ShapeMismatch {
                    op: "from_block_grid",
                    left: (n, n),
                    right: (b, b),
                });
            }
        }
        Ok(Self::from_fn(n * b, n * b, |i, j| {
            blocks[i / b][j / b].get(i % b, j % b).clone()
        }))
    }

    /// Block-diagonal sum of square blocks.
    pub fn direct_sum(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|m| m.rows).sum();
        let mut out = Self::zeros(n, n);
        let mut off = 0;
        for m in blocks {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.data[(off + i) * n + off + j] = m.get(i, j).clone();
                }
            }
            off += m.rows;
        }
        out
    }

    /// Permutation matrix whose k-th column is e_{perm[k]}.
    pub fn permutation_columns(perm: &[usize]) -> Self {
        let n = perm.len();
        Self::from_fn(n, n, |i, j| if perm[j] == i { T::one() } else { T::zero() })
    }

    pub fn to_float(&self) -> Matrix<T::Float>
    where
        T: ToFloat,
    {
        self.map(ToFloat::to_float)
    }
}

impl<T: Field> Matrix<T> {
    /// Determinant by Gaussian elimination (commutative rings only).
    pub fn determinant(&self) -> Result<T, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(T::zero());
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = det * p.clone();
            let pinv = p.inv().ok_or(Error::Singular)?;
            for r in col + 1..n {
                let f = a[r * n + col].clone() * pinv.clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[r * n + j].clone() - f.clone() * a[col * n + j].clone();
                    a[r * n + j] = v;
                }
            }
        }
        Ok(det)
    }
}

/// Gauss-Jordan on [A | I] with left row operations; valid over division rings.
pub(crate) fn gauss_jordan_inverse<T: Scalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.rows;
    let w = 2 * n;
    let mut a: Vec<T> = Vec::with_capacity(n * w);
    for i in 0..n {
        for j in 0..n {
            a.push(m.get(i, j).clone());
        }
        for j in 0..n {
            a.push(if i == j { T::one() } else { T::zero() });
        }
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r * w + col].is_zero())?;
        if piv != col {
            for j in 0..w {
                a.swap(piv * w + j, col * w + j);
            }
        }
        let pinv = a[col * w + col].inv()?;
        for j in 0..w {
            a[col * w + j] = pinv.clone() * a[col * w + j].clone();
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r * w + col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..w {
                let v = a[r * w + j].clone() - f.clone() * a[col * w + j].clone();
                a[r * w + j] = v;
            }
        }
    }
    Some(Matrix::from_fn(n, n, |i, j| a[i * w + n + j].clone()))
}

/// Kronecker product; entry (i·p + k, j·q + l) is a_ij · b_kl.
pub fn kron<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    Matrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        a.get(i / b.rows, j / b.cols).clone() * b.get(i % b.rows, j % b.cols).clone()
    })
}

/// Left-to-right Kronecker product of several factors.
pub fn kron_all<T: Scalar>(factors: &[&Matrix<T>]) -> Matrix<T> {
    let mut it = factors.iter();
    let first = (*it.next().expect("kron_all needs at least one factor")).clone();
    it.fold(first, |acc, m| kron(&acc, m))
}

/// [[Y,Z],[U,V]] ↦ [[Y,U],[Z,V]].
pub fn block_transpose<T: Scalar>(x: &Matrix<T>) -> Result<Matrix<T>, Error> {
    let [y, z, u, v] = x.quarters()?;
    if y.rows != y.cols || z.shape() != u.shape() {
        return Err(Error::OddDimension {
            rows: x.rows,
            cols: x.cols,
        });
    }
    Matrix::from_quarters(&y, &u, &z, &v)
}

/// Tr(a* b), where * is the transpose for real rings.
pub fn trace_pairing<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T, Error> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            op: "trace_pairing",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let mut acc = T::zero();
    for (x, y) in a.data.iter().zip(&b.data) {
        acc = acc + x.conj() * y.clone();
    }
    Ok(acc)
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, o: &Matrix<T>) -> Matrix<T> {
        self.checked_add(o).expect("matrix add: shape mismatch")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, o: &Matrix<T>) -> Matrix<T> {
        self.checked_sub(o).expect("matrix sub: shape mismatch")
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(o).expect("matrix mul: shape mismatch")
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Scalar> Add for Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, o: Matrix<T>) -> Matrix<T> {
        &self + &o
    }
}

impl<T: Scalar> Sub for Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, o: Matrix<T>) -> Matrix<T> {
        &self - &o
    }
}

impl<T: Scalar> Mul for Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: Matrix<T>) -> Matrix<T> {
        &self * &o
    }
}

impl<T: Scalar> Neg for Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        -&self
    }
}

/// Lifts a rational matrix into the complex or quaternion ring.
pub fn lift<S: Scalar>(m: &Matrix<crate::scalar::Q>) -> Matrix<S>
where
    S::Real: From<crate::scalar::Q>,
{
    m.map(|x| S::from_real(S::Real::from(x.clone())))
}
