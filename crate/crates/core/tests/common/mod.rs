#![allow(dead_code)]

use holomat::holo::StandardFormSpec;
use holomat::random::{normalize_spectral, random_similarity, RandomModel};
use holomat::{Complex64, ComplexMatrix};

pub const DIMS: [usize; 4] = [2, 3, 4, 6];
pub const FIXTURE_COND: f64 = 100.0;
pub const FIXTURE_RADIUS: f64 = 1.0;

pub struct Fixture {
    pub seed: u64,
    pub spec: StandardFormSpec,
}

/// Random standard form: `m` cycles through 2, 3, 4, 6, degrees 1..=6, a
/// transpose form for every third seed, and some fixtures with λ₁ = 0 or
/// interior zeros.
pub fn fixture(seed: u64) -> Fixture {
    let mut model = RandomModel::new(seed);
    let m = DIMS[seed as usize % 4];
    let degree = 1 + (seed as usize * 5 + 1) % 6;
    let transpose = seed % 3 == 2;
    let mut lambdas: Vec<Complex64> = (0..degree).map(|_| model.complex_normal()).collect();
    if degree >= 2 && seed % 7 == 3 {
        lambdas[0] = Complex64::new(0.0, 0.0);
    }
    if degree >= 3 && seed % 5 == 1 {
        lambdas[1] = Complex64::new(0.0, 0.0);
    }
    let s = random_similarity(&mut model, m, FIXTURE_COND);
    Fixture {
        seed,
        spec: StandardFormSpec::new(lambdas, s, transpose, FIXTURE_RADIUS).unwrap(),
    }
}

pub fn fixtures() -> Vec<Fixture> {
    (0..20).map(fixture).collect()
}

/// `Σ λₙ S⁻¹ y^n S` by repeated multiplication, with `S⁻¹` from Gauss–Jordan
/// elimination written here.
pub fn oracle_eval(spec: &StandardFormSpec, x: &ComplexMatrix) -> ComplexMatrix {
    let s = spec.similarity();
    let s_inv = gauss_jordan_inverse(s);
    let y = if spec.is_transpose() { x.transpose() } else { x.clone() };
    let m = x.rows();
    let mut acc = ComplexMatrix::zeros(m, m);
    let mut power = ComplexMatrix::identity(m);
    for lambda in spec.lambdas() {
        power = power.matmul(&y);
        acc = &acc + &power.scale(*lambda);
    }
    s_inv.matmul(&acc).matmul(s)
}

pub fn gauss_jordan_inverse(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut aug: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        a[(i, j)]
                    } else if j - n == i {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&p, &q| aug[p][col].norm().total_cmp(&aug[q][col].norm())).unwrap();
        aug.swap(col, pivot);
        let d = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= d;
        }
        for r in 0..n {
            if r != col {
                let f = aug[r][col];
                let pivot_row = aug[col].clone();
                for (v, t) in aug[r].iter_mut().zip(pivot_row) {
                    *v -= f * t;
                }
            }
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| aug[i][n + j])
}

/// A point with spectral norm in `(0, r/2]`, Hermitian or Ginibre.
pub fn ball_point(model: &mut RandomModel, m: usize, radius: f64) -> ComplexMatrix {
    let x = if model.index(2) == 0 { model.hermitian(m) } else { model.ginibre(m, m) };
    normalize_spectral(&x).scale_real(model.uniform_positive(radius / 2.0))
}

/// `a = c·b` for some scalar `c`, up to `tol` relative.
pub fn scalar_multiple(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    let idx = (0..b.as_slice().len())
        .max_by(|&p, &q| b.as_slice()[p].norm().total_cmp(&b.as_slice()[q].norm()))
        .unwrap();
    let ratio = a.as_slice()[idx] / b.as_slice()[idx];
    a.distance(&b.scale(ratio)) <= tol * a.frobenius_norm()
}

/// `‖a − b‖_F / ‖b‖_F`.
pub fn rel(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.distance(b) / b.frobenius_norm().max(f64::MIN_POSITIVE)
}
