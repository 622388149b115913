//! Dense row-major matrices, products, norms and the symmetric eigensolver.

mod eigen;
mod text;

pub use eigen::{symmetric_eigen, EigenDecomposition, DEFAULT_EIGEN_TOL, MAX_JACOBI_SWEEPS};
pub use text::{load_matrix, read_matrix, save_matrix, write_matrix};

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Entrywise asymmetry accepted by [`SpdMatrix::new`] and [`Matrix::spectral_norm`],
/// relative to `max(1, max |a_ij|)`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A dense `rows x cols` matrix of `f64` stored in row-major order.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries. Rejects empty shapes, a length
    /// mismatch and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "non-finite entry at ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {ncols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(nrows, ncols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// # Panics
    /// If either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// # Panics
    /// If `n` is zero.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diagonal_from(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut data = vec![0.0; n * n];
        for (i, v) in values.iter().enumerate() {
            data[i * n + i] = *v;
        }
        Self::new(n, n, data)
    }

    /// Unchecked constructor for results of arithmetic on valid matrices.
    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self::from_raw(self.cols, self.rows, data)
    }

    /// Standard matrix product `self * rhs`.
    pub fn multiply(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(self.mismatch("multiply", rhs));
        }
        let (m, k, n) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![0.0; m * n];
        // SAFETY: the strides describe the row-major buffers of `self` (m x k),
        // `rhs` (k x n) and `out` (m x n) exactly; `out` does not alias them.
        unsafe {
            matrixmultiply::dgemm(
                m,
                k,
                n,
                1.0,
                self.data.as_ptr(),
                k as isize,
                1,
                rhs.data.as_ptr(),
                n as isize,
                1,
                0.0,
                out.as_mut_ptr(),
                n as isize,
                1,
            );
        }
        Ok(Self::from_raw(m, n, out))
    }

    /// `self' * rhs` without materializing the transpose.
    pub fn transpose_multiply(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows {
            return Err(self.mismatch("transpose_multiply", rhs));
        }
        let (m, k, n) = (self.cols, self.rows, rhs.cols);
        let mut out = vec![0.0; m * n];
        // SAFETY: `self` is k x m row-major, read here as its m x k transpose
        // (row stride 1, column stride m). `rhs` is k x n, `out` is m x n.
        unsafe {
            matrixmultiply::dgemm(
                m,
                k,
                n,
                1.0,
                self.data.as_ptr(),
                1,
                m as isize,
                rhs.data.as_ptr(),
                n as isize,
                1,
                0.0,
                out.as_mut_ptr(),
                n as isize,
                1,
            );
        }
        Ok(Self::from_raw(m, n, out))
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    pub fn scaled(&self, factor: f64) -> Matrix {
        Self::from_raw(
            self.rows,
            self.cols,
            self.data.iter().map(|v| v * factor).collect(),
        )
    }

    /// `c*I - self` for square matrices.
    pub(crate) fn shifted_identity_minus(&self, c: f64) -> Matrix {
        debug_assert!(self.is_square());
        let mut out = self.scaled(-1.0);
        for i in 0..self.rows {
            out.data[i * self.cols + i] += c;
        }
        out
    }

    /// Largest absolute entry, 0 for the zero matrix.
    pub fn entrywise_max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// Largest entrywise asymmetry `|a_ij - a_ji|` of a square matrix.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.rows;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `||self - other||_F`.
    pub fn frobenius_distance(&self, other: &Matrix) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(self.mismatch("frobenius_distance", other));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }

    /// Largest absolute eigenvalue of a symmetric matrix.
    pub fn spectral_norm(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::InvalidArgument(format!(
                "spectral norm needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let scale = self.entrywise_max_abs();
        if scale == 0.0 {
            return Ok(0.0);
        }
        let asym = self.max_asymmetry();
        if asym > SYMMETRY_TOL * scale.max(1.0) {
            return Err(Error::NotSymmetric { asymmetry: asym });
        }
        let sym = SpdMatrix::new(self.clone())?;
        let tol = (scale * 1e-14).max(f64::MIN_POSITIVE);
        let eig = symmetric_eigen(&sym, tol)?;
        Ok(eig
            .eigenvalues()
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs())))
    }

    fn zip_with(&self, rhs: &Matrix, op: &'static str, f: impl Fn(f64, f64) -> f64) -> Result<Matrix> {
        if self.shape() != rhs.shape() {
            return Err(self.mismatch(op, rhs));
        }
        Ok(Self::from_raw(
            self.rows,
            self.cols,
            self.data.iter().zip(&rhs.data).map(|(a, b)| f(*a, *b)).collect(),
        ))
    }

    fn mismatch(&self, op: &'static str, rhs: &Matrix) -> Error {
        Error::DimensionMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: rhs.rows,
            right_cols: rhs.cols,
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// A symmetric `n x n` matrix. Positive definiteness is not checked here; the
/// operations that need it reject violating inputs themselves.
#[derive(Clone, PartialEq, Debug)]
pub struct SpdMatrix {
    inner: Matrix,
}

impl SpdMatrix {
    /// Accepts a square matrix whose asymmetry is within [`SYMMETRY_TOL`] and
    /// symmetrizes it exactly as `(a_ij + a_ji) / 2`.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidMatrix(format!(
                "symmetric matrix must be square, got {}x{}",
                m.rows, m.cols
            )));
        }
        let asym = m.max_asymmetry();
        if asym > SYMMETRY_TOL * m.entrywise_max_abs().max(1.0) {
            return Err(Error::NotSymmetric { asymmetry: asym });
        }
        Ok(Self::symmetrized(m))
    }

    pub(crate) fn symmetrized(mut m: Matrix) -> Self {
        let n = m.rows;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (m.data[i * n + j] + m.data[j * n + i]);
                m.data[i * n + j] = avg;
                m.data[j * n + i] = avg;
            }
        }
        Self { inner: m }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: Matrix::identity(n),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn into_matrix(self) -> Matrix {
        self.inner
    }

    pub fn diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.order()).map(move |i| self.get(i, i))
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().sum()
    }

    pub fn min_diagonal(&self) -> f64 {
        self.diagonal().fold(f64::INFINITY, f64::min)
    }

    /// Maximum absolute row sum, `||Z||_inf`. Bounds every eigenvalue from above.
    pub fn infinity_norm(&self) -> f64 {
        (0..self.order())
            .map(|i| self.inner.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Multiplies every entry by `factor`; symmetry is preserved exactly.
    pub(crate) fn scaled(&self, factor: f64) -> Self {
        Self {
            inner: self.inner.scaled(factor),
        }
    }

    pub fn eigen(&self) -> Result<EigenDecomposition> {
        symmetric_eigen(self, DEFAULT_EIGEN_TOL)
    }
}

impl AsRef<Matrix> for SpdMatrix {
    fn as_ref(&self) -> &Matrix {
        &self.inner
    }
}

impl TryFrom<Matrix> for SpdMatrix {
    type Error = Error;

    fn try_from(m: Matrix) -> Result<Self> {
        Self::new(m)
    }
}

/// `X'X`, symmetrized by averaging the `(i, j)` and `(j, i)` accumulations.
pub fn gram(x: &Matrix) -> SpdMatrix {
    let z = x
        .transpose_multiply(x)
        .expect("X'X shapes always conform");
    SpdMatrix::symmetrized(z)
}
