//! Dense complex linear algebra.
//!
//! Everything here is self-contained: a row-major [`CMatrix`], the validated
//! [`HermMatrix`] newtype, a cyclic Jacobi eigensolver and the factorizations
//! built on top of it (singular values, polar form, pseudoinverse, positive
//! square roots, `e^{iX}`).

mod eigen;
mod factor;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use eigen::{eigh, EigenPair, JACOBI_MAX_SWEEPS, JACOBI_REL_TOL};
pub use factor::{
    compress, direct_sum, offdiag_embed, pinv, polar, psd_sqrt, svd, svd_values, unitary_exp,
    Compression, Polar, Svd, PINV_CUTOFF,
};

pub use num_complex::Complex64 as C64;

/// Relative tolerance for Hermiticity and projection checks on inputs.
pub const HERM_TOL: f64 = 1e-10;

/// Relative tolerance for clamping tiny negative eigenvalues of Gram matrices.
pub const PSD_CLAMP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix data has {actual} entries, expected {rows}x{cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        actual: usize,
    },
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not an orthogonal projection: deviation {deviation:e}")]
    NotProjection { deviation: f64 },
    #[error("matrix is not positive semidefinite: eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("dimension mismatch: {context}")]
    DimMismatch { context: String },
}

/// Dense complex matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch {
                rows,
                cols,
                actual: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self, LinalgError> {
        Self::new(rows, cols, entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { C64::new(diag[i], 0.0) } else { C64::new(0.0, 0.0) })
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
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_c(C64::new(s, 0.0))
    }

    pub fn scale_c(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Copy of the block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols, "block out of range");
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Hermitian part `(X + X*)/2` and skew part `(X - X*)/(2i)`, both Hermitian.
    pub fn cartesian_parts(&self) -> Result<(HermMatrix, HermMatrix), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let adj = self.adjoint();
        let re = (self + &adj).scale(0.5);
        let im = (self - &adj).scale_c(C64::new(0.0, -0.5));
        Ok((HermMatrix::symmetrized(re), HermMatrix::symmetrized(im)))
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// `‖self - other‖_F`; shapes must agree.
    pub fn distance(&self, other: &CMatrix) -> f64 {
        (self - other).frobenius_norm()
    }

    /// Raw little-endian bytes of all entries, used for input digests.
    pub fn digest_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + 16 * self.data.len());
        out.extend_from_slice(&(self.rows as u64).to_le_bytes());
        out.extend_from_slice(&(self.cols as u64).to_le_bytes());
        for z in &self.data {
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
        out
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(-1.0)
    }
}

impl fmt::Display for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Square complex matrix that is Hermitian within [`HERM_TOL`].
#[derive(Clone, Debug, PartialEq)]
pub struct HermMatrix(CMatrix);

impl HermMatrix {
    /// Validates Hermiticity; inputs are never silently symmetrized.
    pub fn new(m: CMatrix) -> Result<Self, LinalgError> {
        if !m.is_square() {
            return Err(LinalgError::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        let tol = HERM_TOL * m.max_abs().max(1.0);
        let deviation = m.hermitian_deviation();
        if deviation > tol {
            return Err(LinalgError::NotHermitian { deviation, tol });
        }
        Ok(Self(m))
    }

    pub fn from_real(n: usize, entries: &[f64]) -> Result<Self, LinalgError> {
        Self::new(CMatrix::from_real(n, n, entries)?)
    }

    pub fn diag(values: &[f64]) -> Self {
        Self(CMatrix::from_diag(values))
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(CMatrix::zeros(n, n))
    }

    /// Hermitian part `(M + M*)/2` of a square matrix.
    pub fn symmetrized(m: CMatrix) -> Self {
        assert!(m.is_square(), "symmetrized needs a square matrix");
        let adj = m.adjoint();
        Self((&m + &adj).scale(0.5))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.rows
    }

    #[inline]
    pub fn as_cmatrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_cmatrix(self) -> CMatrix {
        self.0
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale(s))
    }

    pub fn add(&self, other: &HermMatrix) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &HermMatrix) -> Self {
        Self(&self.0 - &other.0)
    }

    /// `A + cI`.
    pub fn shift(&self, c: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.rows {
            m[(i, i)] += C64::new(c, 0.0);
        }
        Self(m)
    }

    /// `X* A X` for any conformable `X`.
    pub fn congruence(&self, x: &CMatrix) -> Self {
        Self::symmetrized(&(&x.adjoint() * &self.0) * x)
    }

    /// `X A X*` for any conformable `X`.
    pub fn conjugate_by(&self, x: &CMatrix) -> Self {
        Self::symmetrized(&(x * &self.0) * &x.adjoint())
    }
}

impl Index<(usize, usize)> for HermMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}
