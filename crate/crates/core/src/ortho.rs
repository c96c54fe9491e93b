//! Randomized testers for orthogonal additivity, orthogonal multiplicativity
//! and zero-product preservation, with witness extraction.
//!
//! A tester never proves a property on the whole ball; it returns a
//! [`Verdict`] summarizing sampled evidence. Trial `0` is always a fixed,
//! hand-picked pair; the remaining trials are drawn from the model. The
//! worst trial (lowest index on ties) becomes the witness when the verdict
//! fails.

use serde::Serialize;

use crate::error::HoloError;
use crate::holo::{HomogeneousComponent, MatrixFunction};
use crate::matrix::{ComplexMatrix, I_UNIT, ONE};
use crate::random::{normalize_spectral, random_orthogonal_selfadjoint_pair, random_zero_product_pair, RandomModel};

/// Default number of sampled pairs per tester.
pub const DEFAULT_TRIALS: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub trial: usize,
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub residual: f64,
    /// Degrees `(m, n)` for component-pair checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub trials: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub witness: Option<Witness>,
}

/// Running max over trials; ties keep the earlier trial.
#[derive(Default)]
pub(crate) struct Reduction {
    worst: Option<Witness>,
    trials: usize,
}

impl Reduction {
    pub(crate) fn record(&mut self, witness: Witness) {
        self.trials += 1;
        let replace = match &self.worst {
            None => true,
            Some(w) => witness.residual > w.residual || witness.residual.is_nan(),
        };
        if replace {
            self.worst = Some(witness);
        }
    }

    pub(crate) fn finish(self, tolerance: f64) -> Verdict {
        let max_residual = self.worst.as_ref().map_or(0.0, |w| w.residual);
        let passed = max_residual <= tolerance;
        Verdict {
            passed,
            trials: self.trials,
            tolerance,
            max_residual,
            witness: if passed { None } else { self.worst },
        }
    }
}

/// The pair of orthogonal rank-one projections
/// `a = ½[[1, i], [−i, 1]] ⊕ 0`, `b = ½[[1, −i], [i, 1]] ⊕ 0` in `M_m`.
/// `ab = 0` while `abᵗ = a ≠ 0`.
pub fn transpose_witness(m: usize) -> (ComplexMatrix, ComplexMatrix) {
    assert!(m >= 2, "the witness pair lives in M_m with m >= 2");
    let half = 0.5;
    let a = ComplexMatrix::from_rows(&[vec![ONE, I_UNIT], vec![-I_UNIT, ONE]])
        .expect("2x2")
        .scale_real(half);
    let b = ComplexMatrix::from_rows(&[vec![ONE, -I_UNIT], vec![I_UNIT, ONE]])
        .expect("2x2")
        .scale_real(half);
    (a.embed(m), b.embed(m))
}

/// The idempotents `a = E_11`, `b = E_21 + E_22` in `M_m`: `ab = 0`, `ba = E_21`.
pub fn one_sided_idempotent_pair(m: usize) -> (ComplexMatrix, ComplexMatrix) {
    assert!(m >= 2, "the idempotent pair lives in M_m with m >= 2");
    let a = ComplexMatrix::unit(m, 0, 0);
    let b = &ComplexMatrix::unit(m, 1, 0) + &ComplexMatrix::unit(m, 1, 1);
    (a, b)
}

/// Scales `x` to spectral norm uniform in `(0, r/4]`.
fn rescale(model: &mut RandomModel, x: &ComplexMatrix, radius: f64) -> ComplexMatrix {
    normalize_spectral(x).scale_real(model.uniform_positive(radius / 4.0))
}

fn selfadjoint_pairs<F: MatrixFunction + ?Sized>(
    f: &F,
    model: &mut RandomModel,
    trials: usize,
) -> impl Iterator<Item = (ComplexMatrix, ComplexMatrix)> {
    let m = f.domain_dim();
    let r = f.sample_radius();
    let mut pairs = Vec::with_capacity(trials);
    let (a0, b0) = transpose_witness(m);
    pairs.push((a0.scale_real(r / 4.0), b0.scale_real(r / 4.0)));
    for _ in 1..trials {
        let (a, b) = random_orthogonal_selfadjoint_pair(model, m);
        let a = rescale(model, &a, r);
        let b = rescale(model, &b, r);
        pairs.push((a, b));
    }
    pairs.into_iter()
}

fn product_residual(fa: &ComplexMatrix, fb: &ComplexMatrix) -> f64 {
    fa.matmul(fb).frobenius_norm() / ((1.0 + fa.frobenius_norm()) * (1.0 + fb.frobenius_norm()))
}

/// `H(a+b) = H(a) + H(b)` over orthogonal self-adjoint pairs; residual
/// `‖H(a+b) − H(a) − H(b)‖_F / (1 + ‖H(a+b)‖_F)`.
pub fn test_orthogonal_additivity<F: MatrixFunction + ?Sized>(
    h: &F,
    model: &mut RandomModel,
    trials: usize,
    tol: f64,
) -> Result<Verdict, HoloError> {
    assert!(trials >= 1, "at least one trial is required");
    let mut reduction = Reduction::default();
    for (trial, (a, b)) in selfadjoint_pairs(h, model, trials).enumerate() {
        let sum = h.apply_to(&(&a + &b))?;
        let parts = &h.apply_to(&a)? + &h.apply_to(&b)?;
        let residual = sum.distance(&parts) / (1.0 + sum.frobenius_norm());
        reduction.record(Witness {
            trial,
            a,
            b,
            residual,
            degrees: None,
        });
    }
    Ok(reduction.finish(tol))
}

/// `H(a)H(b) = 0` over orthogonal self-adjoint pairs; residual
/// `‖H(a)H(b)‖_F / ((1 + ‖H(a)‖_F)(1 + ‖H(b)‖_F))`.
pub fn test_orthogonal_multiplicativity<F: MatrixFunction + ?Sized>(
    h: &F,
    model: &mut RandomModel,
    trials: usize,
    tol: f64,
) -> Result<Verdict, HoloError> {
    assert!(trials >= 1, "at least one trial is required");
    let mut reduction = Reduction::default();
    for (trial, (a, b)) in selfadjoint_pairs(h, model, trials).enumerate() {
        let residual = product_residual(&h.apply_to(&a)?, &h.apply_to(&b)?);
        reduction.record(Witness {
            trial,
            a,
            b,
            residual,
            degrees: None,
        });
    }
    Ok(reduction.finish(tol))
}

/// `ab = 0 ⟹ H(a)H(b) = 0` over one-sided (generally non-Hermitian) pairs.
pub fn test_zero_product_preservation<F: MatrixFunction + ?Sized>(
    h: &F,
    model: &mut RandomModel,
    trials: usize,
    tol: f64,
) -> Result<Verdict, HoloError> {
    assert!(trials >= 1, "at least one trial is required");
    let m = h.domain_dim();
    let r = h.sample_radius();
    let mut reduction = Reduction::default();
    for trial in 0..trials {
        let (a, b) = if trial == 0 {
            let (a, b) = one_sided_idempotent_pair(m);
            (normalize_spectral(&a).scale_real(r / 4.0), normalize_spectral(&b).scale_real(r / 4.0))
        } else {
            let (a, b) = random_zero_product_pair(model, m);
            (rescale(model, &a, r), rescale(model, &b, r))
        };
        let residual = product_residual(&h.apply_to(&a)?, &h.apply_to(&b)?);
        reduction.record(Witness {
            trial,
            a,
            b,
            residual,
            degrees: None,
        });
    }
    Ok(reduction.finish(tol))
}

/// `Pₘ(x)Pₙ(y) = 0` for every ordered degree pair over orthogonal
/// self-adjoint `(x, y)`.
pub fn test_component_cross_orthogonality(
    components: &[HomogeneousComponent],
    model: &mut RandomModel,
    trials: usize,
    tol: f64,
) -> Result<Verdict, HoloError> {
    assert!(trials >= 1, "at least one trial is required");
    let Some(first) = components.first() else {
        return Ok(Reduction::default().finish(tol));
    };
    let mut reduction = Reduction::default();
    for (trial, (x, y)) in selfadjoint_pairs(first, model, trials).enumerate() {
        let px: Vec<ComplexMatrix> = components.iter().map(|p| p.evaluate(&x)).collect::<Result<_, _>>()?;
        let py: Vec<ComplexMatrix> = components.iter().map(|p| p.evaluate(&y)).collect::<Result<_, _>>()?;
        let mut worst = (0.0f64, (0, 0));
        for (i, fx) in px.iter().enumerate() {
            for (j, fy) in py.iter().enumerate() {
                let r = product_residual(fx, fy);
                if r > worst.0 {
                    worst = (r, (components[i].degree(), components[j].degree()));
                }
            }
        }
        reduction.record(Witness {
            trial,
            a: x,
            b: y,
            residual: worst.0,
            degrees: Some(worst.1),
        });
    }
    Ok(reduction.finish(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::{HoloFunction, StandardFormSpec};
    use crate::random::random_similarity;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn witness_pair_properties() {
        for m in 2..5 {
            let (a, b) = transpose_witness(m);
            assert!(a.matmul(&b).is_zero());
            assert_eq!(b.transpose(), a);
            assert_eq!(a.matmul(&b.transpose()), a);
            assert!(!a.is_zero());
            assert_eq!(a.adjoint(), a);
            assert_eq!(a.matmul(&a), a);
            assert_eq!(a.trace(), ONE);
        }
    }

    #[test]
    fn square_is_orthogonally_additive() {
        let h = HoloFunction::new("x^2", 3, 3, 1.0, |x| x.matmul(x));
        let v = test_orthogonal_additivity(&h, &mut RandomModel::new(0), 50, 1e-9).unwrap();
        assert!(v.passed && v.witness.is_none());
    }

    #[test]
    fn sandwich_fails_additivity_with_explicit_witness() {
        let cmat = &ComplexMatrix::unit(2, 0, 1) + &ComplexMatrix::unit(2, 1, 0);
        let cc = cmat.clone();
        let h = HoloFunction::new("xcx", 2, 2, 1.0, move |x| x.matmul(&cc).matmul(x));
        // a = E_11, b = E_22: H(a+b) = c, H(a) = H(b) = 0
        let a = ComplexMatrix::unit(2, 0, 0);
        let b = ComplexMatrix::unit(2, 1, 1);
        let hab = h.evaluate_unchecked(&(&a + &b));
        assert_eq!(hab, cmat);
        assert!(h.evaluate_unchecked(&a).is_zero() && h.evaluate_unchecked(&b).is_zero());
        let v = test_orthogonal_additivity(&h, &mut RandomModel::new(0), 50, 1e-9).unwrap();
        assert!(!v.passed);
        let w = v.witness.unwrap();
        assert!(w.a.matmul(&w.b).frobenius_norm() < 1e-12);
        assert_eq!(w.residual, v.max_residual);
    }

    #[test]
    fn constant_shift_fails_multiplicativity() {
        let h = HoloFunction::new("x+1", 2, 2, 1.0, |x| x.add_identity(ONE));
        let a = ComplexMatrix::unit(2, 0, 0);
        let b = ComplexMatrix::unit(2, 1, 1);
        let prod = h.evaluate_unchecked(&a).matmul(&h.evaluate_unchecked(&b));
        assert_eq!(prod, &(&a + &b) + &ComplexMatrix::identity(2));
        let v = test_orthogonal_multiplicativity(&h, &mut RandomModel::new(1), 20, 1e-9).unwrap();
        assert!(!v.passed);
    }

    #[test]
    fn standard_form_multiplicative() {
        let spec = StandardFormSpec::new(vec![c(1.0), c(1.0)], ComplexMatrix::identity(3), false, 1.0).unwrap();
        let v = test_orthogonal_multiplicativity(&spec.to_holo(), &mut RandomModel::new(2), 100, 1e-9).unwrap();
        assert!(v.passed, "{v:?}");
    }

    #[test]
    fn conjugation_preserves_zero_products_transpose_does_not() {
        let mut model = RandomModel::new(3);
        let s = random_similarity(&mut model, 3, 10.0);
        let spec = StandardFormSpec::new(vec![c(1.0)], s, false, 1.0).unwrap();
        let v = test_zero_product_preservation(&spec.to_holo(), &mut model, 100, 1e-9).unwrap();
        assert!(v.passed, "{v:?}");

        let t = HoloFunction::new("x^t", 2, 2, 1.0, |x| x.transpose());
        let (a, b) = one_sided_idempotent_pair(2);
        assert!(a.matmul(&b).is_zero());
        assert_eq!(a.transpose().matmul(&b.transpose()), b.matmul(&a).transpose());
        let v = test_zero_product_preservation(&t, &mut model, 100, 1e-9).unwrap();
        assert!(!v.passed);
        let w = v.witness.unwrap();
        assert!(w.a.matmul(&w.b).frobenius_norm() <= 1e-12);
    }

    #[test]
    fn cross_orthogonality_of_diagonal_pair() {
        let p1 = HomogeneousComponent::from_fn(1, 2, 2, 1.0, |x| x.clone());
        let p2 = HomogeneousComponent::from_fn(2, 2, 2, 1.0, |x| x.matmul(x));
        let a = ComplexMatrix::real_diagonal(&[1.0, 0.0]);
        let b = ComplexMatrix::real_diagonal(&[0.0, 1.0]);
        assert!(p1.evaluate(&a).unwrap().matmul(&p2.evaluate(&b).unwrap()).is_zero());
        let v = test_component_cross_orthogonality(&[p1, p2], &mut RandomModel::new(4), 50, 1e-9).unwrap();
        assert!(v.passed);
    }

    #[test]
    fn mixed_transpose_components_are_not_cross_orthogonal() {
        let p1 = HomogeneousComponent::from_fn(1, 2, 2, 1.0, |x| x.clone());
        let p2 = HomogeneousComponent::from_fn(2, 2, 2, 1.0, |x| x.transpose().matmul(&x.transpose()));
        let v = test_component_cross_orthogonality(&[p1, p2], &mut RandomModel::new(4), 10, 1e-9).unwrap();
        assert!(!v.passed);
        assert_eq!(v.witness.as_ref().unwrap().trial, 0);
    }

    #[test]
    fn verdict_invariant() {
        let h = HoloFunction::new("x", 2, 2, 1.0, |x| x.clone());
        let v = test_orthogonal_multiplicativity(&h, &mut RandomModel::new(5), 10, 1e-9).unwrap();
        assert_eq!(v.passed, v.witness.is_none());
        assert_eq!(v.passed, v.max_residual <= v.tolerance);
        assert_eq!(v.trials, 10);
    }
}
