//! Seeded generators for the structured inputs consumed by the testers.
//!
//! A [`RandomModel`] is the only stateful object in the crate. It is not
//! meant to be shared between workers; derive independent children with
//! [`RandomModel::fork`] instead.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::matrix::{ComplexMatrix, ONE};

#[derive(Clone, Debug)]
pub struct RandomModel {
    seed: u64,
    rng: ChaCha12Rng,
}

impl RandomModel {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Position in the underlying keystream, in 32-bit words.
    pub fn stream_position(&self) -> u128 {
        self.rng.get_word_pos()
    }

    /// A child model whose seed is derived from this model's seed and `tag`.
    /// Forking does not advance the parent.
    pub fn fork(&self, tag: u64) -> Self {
        // splitmix64 finalizer over (seed, tag)
        let mut z = self.seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Self::new(z ^ (z >> 31))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// Uniform in `(0, hi]`.
    pub fn uniform_positive(&mut self, hi: f64) -> f64 {
        hi * (1.0 - self.rng.gen::<f64>())
    }

    pub fn index(&mut self, upper: usize) -> usize {
        self.rng.gen_range(0..upper)
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Standard complex Gaussian (unit variance).
    pub fn complex_normal(&mut self) -> Complex64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Complex64::new(self.normal() * s, self.normal() * s)
    }

    /// Ginibre matrix: i.i.d. standard complex Gaussian entries.
    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex_normal())
    }

    /// Random Hermitian matrix `(G + G*)/2`.
    pub fn hermitian(&mut self, n: usize) -> ComplexMatrix {
        self.ginibre(n, n).hermitian_part()
    }

    /// Haar-distributed unitary via Gram–Schmidt on a Ginibre matrix.
    pub fn unitary(&mut self, n: usize) -> ComplexMatrix {
        let g = self.ginibre(n, n);
        let columns: Vec<Vec<Complex64>> = (0..n).map(|j| g.column(j)).collect();
        let q = orthonormalize(&columns);
        ComplexMatrix::from_fn(n, n, |i, j| q[j][i])
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }

    /// Uniform in `[-1, 1]` excluding a small neighbourhood of zero.
    fn nonzero_unit(&mut self) -> f64 {
        loop {
            let v = self.uniform(-1.0, 1.0);
            if v.abs() > 1e-3 {
                return v;
            }
        }
    }
}

/// Modified Gram–Schmidt with one reorthogonalization pass. Columns that
/// collapse numerically are dropped.
pub fn orthonormalize(columns: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for col in columns {
        let mut v = col.clone();
        let original: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for _ in 0..2 {
            for b in &basis {
                let proj: Complex64 = b.iter().zip(&v).map(|(bi, vi)| bi.conj() * vi).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-10 * original.max(f64::MIN_POSITIVE) {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    basis
}

/// Hermitian `a`, `b` with `ab = ba = 0`: a shared random unitary conjugating
/// two real diagonals with disjoint, nonempty supports.
pub fn random_orthogonal_selfadjoint_pair(
    model: &mut RandomModel,
    m: usize,
) -> (ComplexMatrix, ComplexMatrix) {
    assert!(m >= 2, "orthogonal pairs need m >= 2");
    let mut indices: Vec<usize> = (0..m).collect();
    model.shuffle(&mut indices);
    let split = 1 + model.index(m - 1);
    let mut da = vec![0.0; m];
    let mut db = vec![0.0; m];
    for (pos, &idx) in indices.iter().enumerate() {
        if pos < split {
            da[idx] = model.nonzero_unit();
        } else {
            db[idx] = model.nonzero_unit();
        }
    }
    let u = model.unitary(m);
    let ua = u.matmul(&ComplexMatrix::real_diagonal(&da)).matmul(&u.adjoint());
    let ub = u.matmul(&ComplexMatrix::real_diagonal(&db)).matmul(&u.adjoint());
    (ua.hermitian_part(), ub.hermitian_part())
}

/// `a`, `b` with `ab = 0` and, generically, `ba ≠ 0`. `b` has rank `r < m` and
/// `a = c·Π` with `Π` the projection onto the orthogonal complement of the
/// column space of `b`.
pub fn random_zero_product_pair(model: &mut RandomModel, m: usize) -> (ComplexMatrix, ComplexMatrix) {
    assert!(m >= 2, "zero-product pairs need m >= 2");
    let rank = 1 + model.index(m - 1);
    let x = model.ginibre(m, rank);
    let y = model.ginibre(rank, m);
    let b = x.matmul(&y);
    let basis = orthonormalize(&(0..rank).map(|j| x.column(j)).collect::<Vec<_>>());
    let mut projector = ComplexMatrix::identity(m);
    for q in &basis {
        let qq = ComplexMatrix::from_fn(m, m, |i, j| q[i] * q[j].conj());
        projector = &projector - &qq;
    }
    let c = model.ginibre(m, m);
    let a = c.matmul(&projector);
    (a, b)
}

/// Invertible `U·diag(σ)·V` with `σ` log-uniform in `[1, cond_cap]`.
pub fn random_similarity(model: &mut RandomModel, m: usize, cond_cap: f64) -> ComplexMatrix {
    assert!(cond_cap >= 1.0, "condition cap must be at least 1");
    let u = model.unitary(m);
    let v = model.unitary(m);
    let log_cap = cond_cap.ln();
    let sigma: Vec<Complex64> = (0..m)
        .map(|_| {
            let t = if log_cap > 0.0 { model.uniform(0.0, 1.0) * log_cap } else { 0.0 };
            Complex64::new(t.exp(), 0.0)
        })
        .collect();
    u.matmul(&ComplexMatrix::diagonal(&sigma)).matmul(&v)
}

/// Orthogonal rank-one projections `p = uu*`, `q = vv*` from two columns of a
/// random unitary.
pub fn random_orthogonal_projection_pair(
    model: &mut RandomModel,
    m: usize,
) -> (ComplexMatrix, ComplexMatrix) {
    assert!(m >= 2, "projection pairs need m >= 2");
    let u = model.unitary(m);
    let i = model.index(m);
    let mut j = model.index(m - 1);
    if j >= i {
        j += 1;
    }
    let rank_one = |k: usize| {
        let col = u.column(k);
        ComplexMatrix::from_fn(m, m, |r, c| col[r] * col[c].conj())
    };
    (rank_one(i), rank_one(j))
}

/// `x` divided by its spectral norm (zero stays zero).
pub fn normalize_spectral(x: &ComplexMatrix) -> ComplexMatrix {
    let n = x.spectral_norm();
    if n == 0.0 {
        x.clone()
    } else {
        x.scale_real(1.0 / n)
    }
}

/// Idempotent spanning set `{E_ii} ∪ {E_ii + E_ij : i ≠ j}` of `M_m`.
pub fn idempotent_spanning_set(m: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut e = ComplexMatrix::unit(m, i, i);
            if i != j {
                e[(i, j)] = ONE;
            }
            out.push(e);
        }
    }
    out
}

/// All matrix units of `M_m`, row-major in `(i, j)`.
pub fn matrix_units(m: usize) -> Vec<ComplexMatrix> {
    (0..m * m).map(|k| ComplexMatrix::unit(m, k / m, k % m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seeds_identical_streams() {
        let mut a = RandomModel::new(42);
        let mut b = RandomModel::new(42);
        assert_eq!(a.ginibre(3, 3), b.ginibre(3, 3));
        assert_eq!(a.stream_position(), b.stream_position());
        assert_ne!(RandomModel::new(43).ginibre(3, 3), RandomModel::new(42).ginibre(3, 3));
    }

    #[test]
    fn fork_is_deterministic_and_leaves_parent_alone() {
        let parent = RandomModel::new(9);
        let before = parent.stream_position();
        let mut c1 = parent.fork(3);
        let mut c2 = parent.fork(3);
        assert_eq!(parent.stream_position(), before);
        assert_eq!(c1.normal(), c2.normal());
        assert_ne!(parent.fork(3).seed(), parent.fork(4).seed());
    }

    #[test]
    fn unitary_is_unitary() {
        let mut model = RandomModel::new(1);
        for n in 1..=8 {
            let u = model.unitary(n);
            assert!(u.matmul(&u.adjoint()).distance(&ComplexMatrix::identity(n)) < 1e-12);
        }
    }

    #[test]
    fn diagonal_pair_with_identity_unitary() {
        // U = I, supports {1}, {2}
        let a = ComplexMatrix::real_diagonal(&[0.7, 0.0]);
        let b = ComplexMatrix::real_diagonal(&[0.0, -0.4]);
        assert!(a.matmul(&b).is_zero());
    }

    #[test]
    fn orthogonal_pairs_satisfy_contract() {
        let mut model = RandomModel::new(5);
        for m in 2..=7 {
            for _ in 0..20 {
                let (a, b) = random_orthogonal_selfadjoint_pair(&mut model, m);
                assert!(a.matmul(&b).frobenius_norm() <= 1e-12);
                assert!(b.matmul(&a).frobenius_norm() <= 1e-12);
                assert_eq!(a, a.adjoint());
                assert_eq!(b, b.adjoint());
                assert!(a.frobenius_norm() > 1e-3 && b.frobenius_norm() > 1e-3);
            }
        }
    }

    #[test]
    fn one_sided_idempotent_pair_has_zero_product() {
        let a = ComplexMatrix::unit(2, 0, 0);
        let b = &ComplexMatrix::unit(2, 1, 0) + &ComplexMatrix::unit(2, 1, 1);
        assert!(a.matmul(&b).is_zero());
        assert_eq!(b.matmul(&a), ComplexMatrix::unit(2, 1, 0));
    }

    #[test]
    fn zero_product_pairs_satisfy_contract() {
        let mut model = RandomModel::new(42);
        let (a, b) = random_zero_product_pair(&mut model, 3);
        // entrywise product check
        let ab = a.matmul(&b);
        assert!(ab.as_slice().iter().all(|z| z.norm() <= 1e-12 * (1.0 + a.frobenius_norm() * b.frobenius_norm())));
        let mut nonzero_reverse = 0;
        for m in 2..=6 {
            for _ in 0..20 {
                let (a, b) = random_zero_product_pair(&mut model, m);
                let scale = a.frobenius_norm() * b.frobenius_norm();
                assert!(a.matmul(&b).frobenius_norm() <= 1e-12 * scale);
                if b.matmul(&a).frobenius_norm() > 1e-6 * scale {
                    nonzero_reverse += 1;
                }
            }
        }
        assert!(nonzero_reverse >= 90, "only {nonzero_reverse} of 100 pairs had ba != 0");
    }

    #[test]
    fn similarity_with_unit_cap_is_unitary() {
        let mut model = RandomModel::new(3);
        let s = random_similarity(&mut model, 4, 1.0);
        assert!(s.matmul(&s.adjoint()).distance(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn similarity_condition_is_capped() {
        let mut model = RandomModel::new(7);
        let s = random_similarity(&mut model, 4, 100.0);
        let cond = s.condition_number();
        assert!((1.0 - 1e-9..=100.0 * (1.0 + 1e-9)).contains(&cond), "cond = {cond}");
        let inv = s.inverse().unwrap();
        assert!(s.matmul(&inv).distance(&ComplexMatrix::identity(4)) <= 1e-10);
    }

    #[test]
    fn projection_pairs_are_orthogonal_rank_one() {
        let mut model = RandomModel::new(11);
        let (p, q) = random_orthogonal_projection_pair(&mut model, 4);
        assert!(p.matmul(&q).frobenius_norm() < 1e-12);
        assert!(p.matmul(&p).distance(&p) < 1e-12);
        assert!((p.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spanning_set_is_idempotent() {
        for e in idempotent_spanning_set(3) {
            assert_eq!(e.matmul(&e), e);
        }
    }
}
