//! Dense complex matrices.
//!
//! `ComplexMatrix` is the value type used everywhere in the crate: inputs of
//! holomorphic functions, their values, images of matrix units under linear
//! maps and the similarity matrices recovered by the classifier. Storage is a
//! row-major `Vec<Complex64>`; all operations allocate fresh results.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::MatrixError;

/// Shorthand for the complex zero.
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
/// Shorthand for the complex one.
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
/// Shorthand for the imaginary unit.
pub const I_UNIT: Complex64 = Complex64::new(0.0, 1.0);

/// A dense `rows × cols` complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyDimension { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows of real pairs, handy in tests.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::RaggedRows);
        }
        Self::from_vec(r, c, rows.concat())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    /// The matrix unit `E_ij` of size `n × n` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n, "matrix unit index out of range");
        let mut e = Self::zeros(n, n);
        e[(i, j)] = ONE;
        e
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { ZERO })
    }

    pub fn real_diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { Complex64::new(values[i], 0.0) } else { ZERO })
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

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * alpha).collect(),
        }
    }

    pub fn scale_real(&self, alpha: f64) -> Self {
        self.scale(Complex64::new(alpha, 0.0))
    }

    /// Applies `f` entrywise.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = vec![ZERO; self.rows * rhs.cols];
        for i in 0..self.rows {
            let out_row = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let aik = self.data[i * self.cols + k];
                if aik == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += aik * b;
                }
            }
        }
        Self {
            rows: self.rows,
            cols: rhs.cols,
            data: out,
        }
    }

    /// `self^n` for square `self`; `self^0` is the identity.
    pub fn pow(&self, n: usize) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        result
    }

    /// Evaluates `Σ coeffs[n-1]·selfⁿ` (no constant term) by Horner's rule.
    pub fn power_series(&self, coeffs: &[Complex64]) -> Self {
        assert!(self.is_square(), "power series of a non-square matrix");
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for &c in coeffs.iter().rev() {
            acc = acc.add_identity(c).matmul(self);
        }
        acc
    }

    /// `self + alpha·I`.
    pub fn add_identity(&self, alpha: Complex64) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] += alpha;
        }
        out
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        Self::from_fn(r1 + r2, c1 + c2, |i, j| {
            if i < r1 && j < c1 {
                self.get(i, j)
            } else if i >= r1 && j >= c1 {
                other.get(i - r1, j - c1)
            } else {
                ZERO
            }
        })
    }

    /// Places `self` in the top-left corner of an `n × n` zero matrix.
    pub fn embed(&self, n: usize) -> Self {
        assert!(self.rows <= n && self.cols <= n, "embedding into a smaller matrix");
        Self::from_fn(n, n, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j)
            } else {
                ZERO
            }
        })
    }

    /// Frobenius distance `‖self − other‖_F`.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "distance shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖self − adjoint(self)‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.distance(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_defect() <= tol * (1.0 + self.frobenius_norm())
    }

    /// The Hermitian part `(x + x*)/2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    /// Spectral (operator 2-) norm, from the largest eigenvalue of `x*·x`.
    pub fn spectral_norm(&self) -> f64 {
        self.singular_values().last().copied().unwrap_or(0.0)
    }

    /// Singular values in ascending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let gram = self.adjoint().matmul(self).hermitian_part();
        let decomposition = crate::spectral::hermitian_eigendecomposition(&gram)
            .expect("Gram matrix is Hermitian and Jacobi converges at desk scale");
        decomposition
            .eigenvalues
            .iter()
            .map(|&v| v.max(0.0).sqrt())
            .collect()
    }

    /// 2-norm condition number; infinite for singular input.
    pub fn condition_number(&self) -> f64 {
        let sv = self.singular_values();
        let (lo, hi) = (sv[0], sv[sv.len() - 1]);
        if lo == 0.0 {
            f64::INFINITY
        } else {
            hi / lo
        }
    }

    /// LU factorization with partial pivoting.
    pub fn lu(&self) -> Result<LuFactorization, MatrixError> {
        LuFactorization::new(self)
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        Ok(self.lu()?.inverse())
    }
}

/// Default relative tolerance for [`is_nilpotent`].
pub const NILPOTENT_TOL: f64 = 1e-9;

/// `‖xˢ‖_F ≤ tol·(1 + ‖x‖_F)ˢ` for square `x` of size `s`; by Cayley–Hamilton
/// a nilpotent `x` already has `xˢ = 0`.
pub fn is_nilpotent(x: &ComplexMatrix, tol: f64) -> bool {
    assert!(x.is_square(), "nilpotency of a non-square matrix");
    let s = x.rows();
    let bound = tol * (1.0 + x.frobenius_norm()).powi(s as i32);
    x.pow(s).frobenius_norm() <= bound
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `PA = LU` with row pivoting, kept around for repeated solves.
#[derive(Clone, Debug)]
pub struct LuFactorization {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl LuFactorization {
    pub fn new(a: &ComplexMatrix) -> Result<Self, MatrixError> {
        if !a.is_square() {
            return Err(MatrixError::NotSquare {
                rows: a.rows,
                cols: a.cols,
            });
        }
        let n = a.rows;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs();
        for k in 0..n {
            let (pivot_row, pivot_abs) = (k..n)
                .map(|i| (i, lu[i * n + k].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs <= f64::EPSILON * scale * n as f64 || pivot_abs == 0.0 {
                return Err(MatrixError::Singular);
            }
            if pivot_row != k {
                for j in 0..n {
                    lu.swap(k * n + j, pivot_row * n + j);
                }
                perm.swap(k, pivot_row);
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= factor * u;
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn solve_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[i * n + k];
                let yk = y[k];
                y[i] -= l * yk;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[i * n + k];
                let yk = y[k];
                y[i] -= u * yk;
            }
            y[i] /= self.lu[i * n + i];
        }
        y
    }

    /// Solves `A·X = B`.
    pub fn solve(&self, b: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(b.rows, self.n, "solve shape mismatch");
        let mut out = ComplexMatrix::zeros(self.n, b.cols);
        for j in 0..b.cols {
            let x = self.solve_vec(&b.column(j));
            for (i, v) in x.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        out
    }

    pub fn inverse(&self) -> ComplexMatrix {
        self.solve(&ComplexMatrix::identity(self.n))
    }
}
