//! Named example maps with their expected behavior as runnable checks.
//!
//! * `nilpotent-range`: `M_2 → M_2`, `E_11 ↦ E_12`, other units to zero.
//! * `embed-k2`: `M_k → M_{k+2}`, first row of `x` placed in row 1 columns
//!   `2..=k+1`, first column of `x` in column `k+2` rows `2..=k+1`.
//! * `direct-sum`: `M_k → M_{2k+2}`, `x ↦ x ⊕ θ(x)` with `θ` the previous map.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::StructureError;
use crate::holo::{HoloFunction, LinearMapMatrix};
use crate::matrix::ComplexMatrix;
use crate::ortho::{one_sided_idempotent_pair, test_orthogonal_multiplicativity, test_zero_product_preservation, Verdict};
use crate::random::RandomModel;
use crate::structure::{
    classify_holomorphic, classify_linear_map, range_flags, test_jordan_relation, ClassificationTag, ClassifyParams,
    LinearTag, Tolerances,
};

pub const GALLERY_NAMES: [&str; 3] = ["nilpotent-range", "embed-k2", "direct-sum"];

/// Radius of the ball on which gallery maps are treated as holomorphic.
pub const GALLERY_RADIUS: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    /// Orthogonal multiplicativity tester passes.
    Multiplicative,
    /// Jordan-relation tester passes.
    JordanRelation,
    NilpotentRange,
    TraceZeroRange,
    NonzeroTraceRange,
    NontrivialMultiplication,
    LinearTag { tag: LinearTag },
    /// `classify_linear_map` rejects with a dimension mismatch.
    LinearDimensionMismatch,
    HolomorphicTag { tag: ClassificationTag },
    HolomorphicMixedForm,
    /// `θ(E_ij)^power` equals `expected` exactly.
    UnitImagePower {
        i: usize,
        j: usize,
        power: usize,
        expected: ComplexMatrix,
    },
    /// `trace θ(E_ij)` equals `expected` exactly.
    UnitImageTrace { i: usize, j: usize, expected: Complex64 },
}

impl Expectation {
    /// Short label such as `unit_image_power(0,0)^2`.
    pub fn name(&self) -> String {
        match self {
            Expectation::Multiplicative => "multiplicative".into(),
            Expectation::JordanRelation => "jordan_relation".into(),
            Expectation::NilpotentRange => "nilpotent_range".into(),
            Expectation::TraceZeroRange => "trace_zero_range".into(),
            Expectation::NonzeroTraceRange => "nonzero_trace_range".into(),
            Expectation::NontrivialMultiplication => "nontrivial_multiplication".into(),
            Expectation::LinearTag { tag } => format!("linear_tag({tag:?})"),
            Expectation::LinearDimensionMismatch => "linear_dimension_mismatch".into(),
            Expectation::HolomorphicTag { tag } => format!("holomorphic_tag({tag:?})"),
            Expectation::HolomorphicMixedForm => "holomorphic_mixed_form".into(),
            Expectation::UnitImagePower { i, j, power, .. } => format!("unit_image_power({i},{j})^{power}"),
            Expectation::UnitImageTrace { i, j, .. } => format!("unit_image_trace({i},{j})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub expectation: Expectation,
    pub passed: bool,
    pub detail: String,
}

/// Behavior on `a = E_11`, `b = E_21 + E_22` (`ab = 0`, `ba ≠ 0`, neither
/// self-adjoint).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdempotentPairDiagnostics {
    pub forward_norm: f64,
    pub backward_norm: f64,
    pub zero_product: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GalleryRun {
    pub name: String,
    pub k: usize,
    pub passed: bool,
    pub outcomes: Vec<Outcome>,
    pub idempotent_pair: IdempotentPairDiagnostics,
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: String,
    pub k: usize,
    pub map: LinearMapMatrix,
    pub expected: Vec<Expectation>,
}

fn embed_map(k: usize) -> LinearMapMatrix {
    LinearMapMatrix::from_fn(k, k + 2, |a| {
        let mut y = ComplexMatrix::zeros(k + 2, k + 2);
        for j in 0..k {
            y[(0, j + 1)] = a[(0, j)];
        }
        for i in 0..k {
            y[(i + 1, k + 1)] = a[(i, 0)];
        }
        y
    })
}

pub fn gallery_nilpotent_range() -> GalleryEntry {
    let map = LinearMapMatrix::from_fn(2, 2, |a| ComplexMatrix::unit(2, 0, 1).scale(a[(0, 0)]));
    GalleryEntry {
        name: "nilpotent-range".into(),
        k: 2,
        map,
        expected: vec![
            Expectation::Multiplicative,
            Expectation::JordanRelation,
            Expectation::NilpotentRange,
            Expectation::TraceZeroRange,
            Expectation::UnitImagePower {
                i: 0,
                j: 0,
                power: 2,
                expected: ComplexMatrix::zeros(2, 2),
            },
            Expectation::LinearTag {
                tag: LinearTag::NilpotentRange,
            },
            Expectation::HolomorphicTag {
                tag: ClassificationTag::ZeroTraceRange,
            },
        ],
    }
}

pub fn gallery_embed_k2(k: usize) -> GalleryEntry {
    assert!(k >= 2, "embed-k2 needs k ≥ 2");
    GalleryEntry {
        name: "embed-k2".into(),
        k,
        map: embed_map(k),
        expected: vec![
            Expectation::Multiplicative,
            Expectation::JordanRelation,
            Expectation::NontrivialMultiplication,
            Expectation::UnitImagePower {
                i: 0,
                j: 0,
                power: 2,
                expected: ComplexMatrix::unit(k + 2, 0, k + 1),
            },
            Expectation::UnitImagePower {
                i: 0,
                j: 0,
                power: 3,
                expected: ComplexMatrix::zeros(k + 2, k + 2),
            },
            Expectation::LinearDimensionMismatch,
        ],
    }
}

pub fn gallery_direct_sum(k: usize) -> GalleryEntry {
    assert!(k >= 2, "direct-sum needs k ≥ 2");
    let theta = embed_map(k);
    let map = LinearMapMatrix::from_fn(k, 2 * k + 2, |a| a.direct_sum(&theta.apply(a)));
    GalleryEntry {
        name: "direct-sum".into(),
        k,
        map,
        expected: vec![
            Expectation::Multiplicative,
            Expectation::JordanRelation,
            Expectation::NonzeroTraceRange,
            Expectation::UnitImageTrace {
                i: 0,
                j: 0,
                expected: Complex64::new(1.0, 0.0),
            },
            Expectation::LinearDimensionMismatch,
            Expectation::HolomorphicMixedForm,
        ],
    }
}

/// Looks up `name` or `name:k` (`k` defaults to 2).
pub fn gallery_by_name(spec: &str) -> Option<GalleryEntry> {
    let (name, k) = match spec.split_once(':') {
        Some((name, k)) => (name, k.parse::<usize>().ok().filter(|&k| k >= 2)?),
        None => (spec, 2),
    };
    match name {
        "nilpotent-range" if !spec.contains(':') || k == 2 => Some(gallery_nilpotent_range()),
        "embed-k2" => Some(gallery_embed_k2(k)),
        "direct-sum" => Some(gallery_direct_sum(k)),
        _ => None,
    }
}

impl GalleryEntry {
    pub fn holo(&self) -> HoloFunction {
        HoloFunction::linear(self.name.clone(), self.map.clone(), GALLERY_RADIUS)
    }

    fn check(&self, expectation: &Expectation, model: &mut RandomModel, trials: usize, tols: &Tolerances) -> (bool, String) {
        match expectation {
            Expectation::Multiplicative => {
                let v = test_orthogonal_multiplicativity(&self.map, model, trials, tols.verify)
                    .expect("linear maps evaluate everywhere");
                (v.passed, format!("max residual {:e} over {} trials", v.max_residual, v.trials))
            }
            Expectation::JordanRelation => {
                let v = test_jordan_relation(&self.map, model, trials, tols.verify);
                (v.passed, format!("max residual {:e} over {} trials", v.max_residual, v.trials))
            }
            Expectation::NilpotentRange => {
                let f = range_flags(&self.map, model, tols.decide);
                (f.nilpotent, format!("{f:?}"))
            }
            Expectation::TraceZeroRange => {
                let f = range_flags(&self.map, model, tols.decide);
                (f.trace_zero, format!("{f:?}"))
            }
            Expectation::NonzeroTraceRange => {
                let f = range_flags(&self.map, model, tols.decide);
                (!f.trace_zero, format!("{f:?}"))
            }
            Expectation::NontrivialMultiplication => {
                let f = range_flags(&self.map, model, tols.decide);
                (!f.trivial_multiplication, format!("{f:?}"))
            }
            Expectation::LinearTag { tag } => match classify_linear_map(&self.map, model, tols) {
                Ok(c) => (c.tag == *tag, format!("{:?}", c.tag)),
                Err(e) => (false, e.to_string()),
            },
            Expectation::LinearDimensionMismatch => match classify_linear_map(&self.map, model, tols) {
                Err(e @ StructureError::DimensionMismatch { .. }) => (true, e.to_string()),
                Ok(c) => (false, format!("{:?}", c.tag)),
                Err(e) => (false, e.to_string()),
            },
            Expectation::HolomorphicTag { tag } => {
                let params = ClassifyParams {
                    trials,
                    seed: model.seed(),
                    tolerances: *tols,
                    ..ClassifyParams::default()
                };
                match classify_holomorphic(&self.holo(), &params) {
                    Ok(c) => (c.tag == *tag, format!("{:?}", c.tag)),
                    Err(e) => (false, e.to_string()),
                }
            }
            Expectation::HolomorphicMixedForm => {
                let params = ClassifyParams {
                    trials,
                    seed: model.seed(),
                    tolerances: *tols,
                    ..ClassifyParams::default()
                };
                match classify_holomorphic(&self.holo(), &params) {
                    Err(e @ StructureError::MixedForm { .. }) => (true, e.to_string()),
                    Ok(c) => (false, format!("{:?}", c.tag)),
                    Err(e) => (false, e.to_string()),
                }
            }
            Expectation::UnitImagePower { i, j, power, expected } => {
                let got = self.map.image(*i, *j).pow(*power);
                (got == *expected, format!("distance {:e}", got.distance(expected)))
            }
            Expectation::UnitImageTrace { i, j, expected } => {
                let got = self.map.image(*i, *j).trace();
                (got == *expected, format!("trace {got}"))
            }
        }
    }

    /// Runs every expectation; each one draws from its own fork of `seed`.
    pub fn run(&self, seed: u64, trials: usize, tols: &Tolerances) -> GalleryRun {
        let root = RandomModel::new(seed);
        let outcomes: Vec<Outcome> = self
            .expected
            .iter()
            .enumerate()
            .map(|(idx, e)| {
                let (passed, detail) = self.check(e, &mut root.fork(idx as u64), trials, tols);
                Outcome {
                    expectation: e.clone(),
                    passed,
                    detail,
                }
            })
            .collect();
        let (a, b) = one_sided_idempotent_pair(self.k);
        let (ta, tb) = (self.map.apply(&a), self.map.apply(&b));
        let zero_product = test_zero_product_preservation(&self.map, &mut root.fork(1000), trials, tols.verify)
            .expect("linear maps evaluate everywhere");
        GalleryRun {
            name: self.name.clone(),
            k: self.k,
            passed: outcomes.iter().all(|o| o.passed),
            outcomes,
            idempotent_pair: IdempotentPairDiagnostics {
                forward_norm: ta.matmul(&tb).frobenius_norm(),
                backward_norm: tb.matmul(&ta).frobenius_norm(),
                zero_product,
            },
        }
    }
}
