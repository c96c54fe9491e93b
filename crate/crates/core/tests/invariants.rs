mod common;

use common::*;
use holomat::format::{spec_from_text, spec_to_text};
use holomat::holo::{extract_component, polarize, ContourRadius, LinearMapMatrix, StandardFormSpec};
use holomat::matrix::{is_nilpotent, NILPOTENT_TOL};
use holomat::ortho::test_orthogonal_multiplicativity;
use holomat::random::{random_similarity, RandomModel};
use holomat::structure::{classify_holomorphic, recover_similarity, ClassificationTag, ClassifyParams};
use holomat::{Complex64, ComplexMatrix};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extracted_components_are_homogeneous(seed in 0u64..1000, n in 1usize..5, alpha_re in -1.0f64..1.0, alpha_im in -1.0f64..1.0) {
        let f = fixture(seed % 20);
        let p = extract_component(&f.spec.to_holo(), n, 12, ContourRadius::Adaptive).unwrap();
        let mut model = RandomModel::new(seed);
        let x = ball_point(&mut model, f.spec.dim(), 1.0);
        let alpha = c(alpha_re, alpha_im);
        let lhs = p.evaluate(&x.scale(alpha)).unwrap();
        let rhs = p.evaluate(&x).unwrap().scale(alpha.powi(n as i32));
        prop_assert!(lhs.distance(&rhs) <= 1e-9 * (1.0 + rhs.frobenius_norm()));
    }

    #[test]
    fn polarization_restricts_to_the_polynomial(seed in 0u64..1000, n in 1usize..5) {
        let f = fixture(seed % 20);
        let p = f.spec.component(n);
        let t = polarize(&p).unwrap();
        let x = ball_point(&mut RandomModel::new(seed), f.spec.dim(), 1.0);
        let diag = t.evaluate(&vec![x.clone(); n]).unwrap();
        let direct = p.evaluate(&x).unwrap();
        prop_assert!(diag.distance(&direct) <= 1e-10 * (1.0 + direct.frobenius_norm()));
    }

    #[test]
    fn verdict_passes_iff_residual_within_tolerance(seed in 0u64..1000, tol_exp in -14i32..0) {
        let f = fixture(seed % 20);
        let tol = 10f64.powi(tol_exp);
        let v = test_orthogonal_multiplicativity(&f.spec.to_holo(), &mut RandomModel::new(seed), 20, tol).unwrap();
        prop_assert_eq!(v.passed, v.max_residual <= tol);
        prop_assert_eq!(v.witness.is_some(), !v.passed);
    }

    #[test]
    fn similarity_gauge_does_not_change_the_map(seed in 0u64..1000, re in 0.1f64..3.0, im in -3.0f64..3.0) {
        let m = 2 + (seed % 4) as usize;
        let s = random_similarity(&mut RandomModel::new(seed), m, 50.0);
        let scaled = s.scale(c(re, im));
        let a = StandardFormSpec::new(vec![c(1.0, 0.0)], s, false, 1.0).unwrap().linear_part(1);
        let b = StandardFormSpec::new(vec![c(1.0, 0.0)], scaled, false, 1.0).unwrap().linear_part(1);
        prop_assert!(a.distance(&b) <= 1e-10 * a.norm());
        let ra = recover_similarity(&a, 1e-6).unwrap();
        let rb = recover_similarity(&b, 1e-6).unwrap();
        prop_assert!(ra.distance(&rb) <= 1e-8 * ra.frobenius_norm());
    }

    #[test]
    fn spec_text_round_trip(seed in 0u64..1000) {
        let spec = fixture(seed % 20).spec;
        let text = spec_to_text(&spec);
        let back = spec_from_text(&text).unwrap();
        prop_assert_eq!(back.lambdas(), spec.lambdas());
        prop_assert_eq!(back.similarity(), spec.similarity());
        prop_assert_eq!(spec_to_text(&back), text);
    }
}

#[test]
fn anchor_choice_does_not_change_lambdas() {
    let s = random_similarity(&mut RandomModel::new(4), 3, 30.0);
    let lambdas = vec![c(0.5, 0.1), c(0.0, 0.0), c(-1.0, 0.3), c(0.2, 0.0)];
    let spec = StandardFormSpec::new(lambdas.clone(), s, false, 1.0).unwrap();
    let h = spec.to_holo();
    let base = classify_holomorphic(&h, &ClassifyParams::default()).unwrap();
    assert_eq!(base.k_anchor, Some(1));
    for k in [3, 4] {
        let params = ClassifyParams {
            anchor: Some(k),
            ..ClassifyParams::default()
        };
        let other = classify_holomorphic(&h, &params).unwrap();
        assert_eq!(other.k_anchor, Some(k));
        assert_eq!(other.tag, ClassificationTag::Standard);
        for (a, b) in other.lambdas.iter().zip(&base.lambdas) {
            assert!((a - b).norm() < 1e-8, "{a} vs {b}");
        }
    }
    let bad = ClassifyParams {
        anchor: Some(2),
        ..ClassifyParams::default()
    };
    assert!(classify_holomorphic(&h, &bad).is_err());
}

#[test]
fn smallest_nonzero_degree_anchors() {
    let spec = StandardFormSpec::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)], ComplexMatrix::identity(2), true, 1.0).unwrap();
    let cls = classify_holomorphic(&spec.to_holo(), &ClassifyParams::default()).unwrap();
    assert_eq!(cls.k_anchor, Some(3));
    assert_eq!(cls.tag, ClassificationTag::TransposeStandard);
    assert!((cls.lambdas[2] - c(2.0, 0.0)).norm() < 1e-8);
    assert!(cls.lambdas[0].norm() == 0.0 && cls.lambdas[1].norm() == 0.0);
}

#[test]
fn zero_function_has_trace_free_range() {
    let spec = StandardFormSpec::new(Vec::new(), ComplexMatrix::identity(3), false, 1.0).unwrap();
    let cls = classify_holomorphic(&spec.to_holo(), &ClassifyParams::default()).unwrap();
    assert_eq!(cls.tag, ClassificationTag::ZeroTraceRange);
    assert!(cls.report.active_degrees.is_empty());
}

fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// `Xⁿ = 0` computed exactly over the integers.
fn exactly_nilpotent(x: &[Vec<i64>]) -> bool {
    let mut p = x.to_vec();
    for _ in 1..x.len() {
        p = int_matmul(&p, x);
    }
    p.iter().flatten().all(|&v| v == 0)
}

#[test]
fn nilpotency_agrees_with_exact_integer_oracle() {
    let mut model = RandomModel::new(99);
    let mut nilpotent_count = 0;
    for trial in 0..50 {
        let n = 2 + trial % 4;
        let x: Vec<Vec<i64>> = if trial % 2 == 0 {
            // permuted strictly upper triangular
            let mut perm: Vec<usize> = (0..n).collect();
            model.shuffle(&mut perm);
            let mut u = vec![vec![0i64; n]; n];
            for (i, row) in u.iter_mut().enumerate() {
                for v in row.iter_mut().skip(i + 1) {
                    *v = model.index(7) as i64 - 3;
                }
            }
            (0..n).map(|i| (0..n).map(|j| u[perm[i]][perm[j]]).collect()).collect()
        } else if trial % 4 == 1 {
            (0..n).map(|_| (0..n).map(|_| model.index(5) as i64 - 2).collect()).collect()
        } else {
            // rank-one u vᵗ with vᵗu = 0 (nilpotent) perturbed by one diagonal entry
            let u: Vec<i64> = (0..n).map(|_| model.index(5) as i64 - 2).collect();
            let mut v: Vec<i64> = vec![0; n];
            v[0] = u[1];
            v[1] = -u[0];
            let bump = (trial % 3) as i64;
            (0..n)
                .map(|i| (0..n).map(|j| u[i] * v[j] + if i == j && i == 0 { bump } else { 0 }).collect())
                .collect()
        };
        let truth = exactly_nilpotent(&x);
        nilpotent_count += truth as usize;
        let m = ComplexMatrix::from_fn(n, n, |i, j| c(x[i][j] as f64, 0.0));
        assert_eq!(is_nilpotent(&m, NILPOTENT_TOL), truth, "trial {trial}: {x:?}");
    }
    assert!((25..50).contains(&nilpotent_count), "{nilpotent_count}");
}

#[test]
fn linear_map_composition_with_transpose_is_involutive() {
    let mut model = RandomModel::new(1);
    let images: Vec<ComplexMatrix> = (0..9).map(|_| model.ginibre(2, 2)).collect();
    let t = LinearMapMatrix::new(3, 2, images).unwrap();
    assert_eq!(t.precompose_transpose().precompose_transpose(), t);
}
