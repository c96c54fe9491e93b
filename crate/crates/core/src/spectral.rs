//! Hermitian eigendecomposition by cyclic Jacobi rotations.

use num_complex::Complex64;

use crate::error::MatrixError;
use crate::matrix::ComplexMatrix;

/// Sweep cap used by [`hermitian_eigendecomposition`].
pub const DEFAULT_MAX_SWEEPS: usize = 64;

/// `a = unitary · diag(eigenvalues) · unitary*` with ascending eigenvalues.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub unitary: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::real_diagonal(&self.eigenvalues);
        self.unitary.matmul(&d).matmul(&self.unitary.adjoint())
    }

    /// Applies a real function to the spectrum: `U·diag(f(λ))·U*`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&v| f(v)).collect();
        let d = ComplexMatrix::real_diagonal(&values);
        self.unitary.matmul(&d).matmul(&self.unitary.adjoint())
    }

    /// Rank-one spectral projections `u_k u_k*`, one per eigenvector.
    pub fn projections(&self) -> Vec<ComplexMatrix> {
        let n = self.unitary.rows();
        (0..n)
            .map(|k| {
                let u = self.unitary.column(k);
                ComplexMatrix::from_fn(n, n, |i, j| u[i] * u[j].conj())
            })
            .collect()
    }
}

pub fn hermitian_eigendecomposition(a: &ComplexMatrix) -> Result<SpectralDecomposition, MatrixError> {
    hermitian_eigendecomposition_with_cap(a, DEFAULT_MAX_SWEEPS)
}

pub fn hermitian_eigendecomposition_with_cap(
    a: &ComplexMatrix,
    max_sweeps: usize,
) -> Result<SpectralDecomposition, MatrixError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let defect = a.hermitian_defect();
    if defect > 1e-10 * (1.0 + a.frobenius_norm()) {
        return Err(MatrixError::NotHermitian { defect });
    }

    let n = a.rows();
    let mut w = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = w.frobenius_norm();
    let threshold = f64::EPSILON * scale;

    let mut converged = n == 1 || scale == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == max_sweeps {
            return Err(MatrixError::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut w, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&w) <= threshold;
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (w[(i, i)].re, i)).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let eigenvalues = pairs.iter().map(|p| p.0).collect();
    let unitary = ComplexMatrix::from_fn(n, n, |i, k| v[(i, pairs[k].1)]);
    Ok(SpectralDecomposition { eigenvalues, unitary })
}

fn off_diagonal_norm(w: &ComplexMatrix) -> f64 {
    let n = w.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += w[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One two-sided rotation annihilating `w[p][q]`. With `w[p][q] = |β|e^{iφ}`
/// the rotation is `G = diag(1, e^{-iφ})·[[c, s], [-s, c]]` on rows/cols p, q.
fn rotate(w: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = w[(p, q)];
    let abs_beta = beta.norm();
    if abs_beta == 0.0 {
        return;
    }
    let n = w.rows();
    let phase = beta / abs_beta;
    let phase_conj = phase.conj();
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;

    let zeta = (aqq - app) / (2.0 * abs_beta);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let t = if zeta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // W <- W G
    for k in 0..n {
        let wkp = w[(k, p)];
        let wkq = w[(k, q)];
        w[(k, p)] = wkp * c - wkq * phase_conj * s;
        w[(k, q)] = wkp * s + wkq * phase_conj * c;
    }
    // W <- G* W
    for k in 0..n {
        let wpk = w[(p, k)];
        let wqk = w[(q, k)];
        w[(p, k)] = wpk * c - wqk * phase * s;
        w[(q, k)] = wpk * s + wqk * phase * c;
    }
    w[(p, q)] = Complex64::new(0.0, 0.0);
    w[(q, p)] = Complex64::new(0.0, 0.0);
    w[(p, p)] = Complex64::new(w[(p, p)].re, 0.0);
    w[(q, q)] = Complex64::new(w[(q, q)].re, 0.0);

    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * phase_conj * s;
        v[(k, q)] = vkp * s + vkq * phase_conj * c;
    }
}
