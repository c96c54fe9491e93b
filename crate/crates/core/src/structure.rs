//! Classification of orthogonality-preserving maps.
//!
//! Linear maps `θ: M_m → M_s` that kill products of orthogonal rank-one
//! projections either have nilpotent range or are `λS⁻¹xS` / `λS⁻¹xᵗS`
//! ([`classify_linear_map`]). The similarity is rebuilt from the images of
//! the matrix units ([`recover_similarity`]) and the transpose case is told
//! apart with a pair of idempotents with `ab = 0 ≠ ba`
//! ([`detect_antihomomorphism`]). [`classify_holomorphic`] runs the whole
//! pipeline on a holomorphic function through its linearized components.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{RangeFlags, StructureError};
use crate::holo::{
    default_nodes, extract_all, linearize, probe_set, ContourRadius, HoloFunction, LinearMapMatrix,
    StandardFormSpec, Warning, DEFAULT_N_MAX,
};
use crate::matrix::{is_nilpotent, ComplexMatrix, NILPOTENT_TOL, ZERO};
use crate::ortho::{
    one_sided_idempotent_pair, test_orthogonal_additivity, test_orthogonal_multiplicativity,
    test_zero_product_preservation, transpose_witness, Reduction, Verdict, Witness, DEFAULT_TRIALS,
};
use crate::random::{normalize_spectral, random_orthogonal_projection_pair, RandomModel};

/// Components whose probe sup-norm falls below this fraction of the largest
/// one are treated as zero.
pub const ZERO_COMPONENT_TOL: f64 = 1e-9;

/// Largest condition number accepted for a recovered frame.
pub const FRAME_CONDITION_CAP: f64 = 1e12;

const HYPOTHESIS_SAMPLES: usize = 32;
const RANGE_SAMPLES: usize = 16;
const ANCHOR_SAMPLES: usize = 16;
const RECONSTRUCTION_SAMPLES: usize = 32;

/// Construction / verification / decision thresholds, one order of
/// magnitude and more apart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub construct: f64,
    pub verify: f64,
    pub decide: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            construct: 1e-12,
            verify: 1e-9,
            decide: 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LinearTag {
    NilpotentRange,
    Similarity,
    TransposeSimilarity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearEvidence {
    /// Worst `θ(p)θ(q)` residual over sampled orthogonal projections.
    pub hypothesis_residual: f64,
    pub flags: RangeFlags,
    /// `‖θ(I) − λI‖ / ‖θ(I)‖`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar_residual: Option<f64>,
    /// Relative unit-image distance between `θ` and its reconstruction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearClassification {
    pub tag: LinearTag,
    pub lambda: Option<Complex64>,
    #[serde(rename = "S")]
    pub similarity: Option<ComplexMatrix>,
    pub evidence: LinearEvidence,
}

impl LinearClassification {
    /// `λS⁻¹xS` (or with `xᵗ`) as a unit-image table.
    pub fn reconstruct(&self) -> Option<LinearMapMatrix> {
        let (lambda, s) = (self.lambda?, self.similarity.as_ref()?);
        Some(similarity_form(s, self.tag == LinearTag::TransposeSimilarity).ok()?.scale(lambda))
    }
}

/// `x ↦ S⁻¹xS` (or `S⁻¹xᵗS`).
fn similarity_form(s: &ComplexMatrix, transpose: bool) -> Result<LinearMapMatrix, StructureError> {
    let lu = s.lu()?;
    let m = s.rows();
    Ok(LinearMapMatrix::from_fn(m, m, |e| {
        let y = if transpose { e.transpose() } else { e.clone() };
        lu.solve(&y.matmul(s))
    }))
}

/// `max ‖θ(E_ij) − φ(E_ij)‖ / ‖φ‖`.
fn relative_map_distance(theta: &LinearMapMatrix, reference: &LinearMapMatrix) -> f64 {
    theta.distance(reference) / reference.norm().max(f64::MIN_POSITIVE)
}

fn product_residual(fa: &ComplexMatrix, fb: &ComplexMatrix) -> f64 {
    fa.matmul(fb).frobenius_norm() / ((1.0 + fa.frobenius_norm()) * (1.0 + fb.frobenius_norm()))
}

fn relation_residual(lhs: &ComplexMatrix, rhs: &ComplexMatrix) -> f64 {
    lhs.distance(rhs) / (1.0 + lhs.frobenius_norm() + rhs.frobenius_norm())
}

/// Checks on random `(a, b)`:
/// `θ(1)θ(ab+ba) = θ(a)θ(b) + θ(b)θ(a)`, `θ(1)θ(a) = θ(a)θ(1)` and
/// `θ(1)θ(a²) = θ(a²)θ(1) = θ(a)²`. The residual of a trial is the worst of
/// the three.
pub fn test_jordan_relation(theta: &LinearMapMatrix, model: &mut RandomModel, trials: usize, tol: f64) -> Verdict {
    assert!(trials >= 1, "at least one trial is required");
    let m = theta.domain_dim();
    let unit = theta.apply(&ComplexMatrix::identity(m));
    let mut reduction = Reduction::default();
    for trial in 0..trials {
        let (a, b) = if trial == 0 && m >= 2 {
            transpose_witness(m)
        } else {
            let a = model.ginibre(m, m);
            let b = model.ginibre(m, m);
            (a.scale_real(1.0 / a.frobenius_norm()), b.scale_real(1.0 / b.frobenius_norm()))
        };
        let ta = theta.apply(&a);
        let tb = theta.apply(&b);
        let jordan = &a.matmul(&b) + &b.matmul(&a);
        let r1 = relation_residual(&unit.matmul(&theta.apply(&jordan)), &(&ta.matmul(&tb) + &tb.matmul(&ta)));
        let r2 = relation_residual(&unit.matmul(&ta), &ta.matmul(&unit));
        let ta2 = theta.apply(&a.matmul(&a));
        let square = ta.matmul(&ta);
        let r3 = relation_residual(&unit.matmul(&ta2), &square).max(relation_residual(&ta2.matmul(&unit), &square));
        reduction.record(Witness {
            trial,
            a,
            b,
            residual: r1.max(r2).max(r3),
            degrees: None,
        });
    }
    reduction.finish(tol)
}

/// Worst `θ(p)θ(q)` over orthogonal rank-one projections: all pairs of
/// diagonal units, the complex witness pair, and random pairs.
fn projection_hypothesis(
    theta: &LinearMapMatrix,
    model: &mut RandomModel,
) -> (f64, Option<(ComplexMatrix, ComplexMatrix)>) {
    let m = theta.domain_dim();
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j {
                pairs.push((ComplexMatrix::unit(m, i, i), ComplexMatrix::unit(m, j, j)));
            }
        }
    }
    if m >= 2 {
        let (a, b) = transpose_witness(m);
        pairs.push((b.clone(), a.clone()));
        pairs.push((a, b));
        for _ in 0..HYPOTHESIS_SAMPLES {
            pairs.push(random_orthogonal_projection_pair(model, m));
        }
    }
    let mut worst: (f64, Option<(ComplexMatrix, ComplexMatrix)>) = (0.0, None);
    for (p, q) in pairs {
        let r = product_residual(&theta.apply(&p), &theta.apply(&q));
        if r > worst.0 {
            worst = (r, Some((p, q)));
        }
    }
    worst
}

/// Nilpotency, trace-zero and trivial-multiplication flags on unit images
/// and a random sample of the range.
pub fn range_flags(theta: &LinearMapMatrix, model: &mut RandomModel, tol: f64) -> RangeFlags {
    let m = theta.domain_dim();
    let mut values: Vec<ComplexMatrix> = theta.images().to_vec();
    for _ in 0..RANGE_SAMPLES {
        values.push(theta.apply(&model.ginibre(m, m)));
    }
    let nilpotent = values.iter().all(|y| is_nilpotent(y, NILPOTENT_TOL));
    let trace_zero = values.iter().all(|y| y.trace().norm() <= tol * (1.0 + y.frobenius_norm()));
    let images = theta.images();
    let trivial_multiplication = images
        .iter()
        .all(|x| images.iter().all(|y| product_residual(x, y) <= tol));
    RangeFlags {
        nilpotent,
        trace_zero,
        trivial_multiplication,
    }
}

/// With `a = E_11`, `b = E_21 + E_22` (so `ab = 0`, `ba ≠ 0`): true iff
/// `Φ(a)Φ(b) ≠ 0` and `Φ(b)Φ(a) = 0`. Products are measured relative to
/// `‖Φ(a)‖‖Φ(b)‖`.
pub fn detect_antihomomorphism(phi: &LinearMapMatrix, tol: f64) -> Result<bool, StructureError> {
    let (a, b) = one_sided_idempotent_pair(phi.domain_dim());
    let (pa, pb) = (phi.apply(&a), phi.apply(&b));
    let scale = pa.frobenius_norm() * pb.frobenius_norm();
    let measure = |x: &ComplexMatrix, y: &ComplexMatrix| {
        if scale == 0.0 {
            0.0
        } else {
            x.matmul(y).frobenius_norm() / scale
        }
    };
    let forward = measure(&pa, &pb);
    let backward = measure(&pb, &pa);
    match (forward > tol, backward > tol) {
        (true, false) => Ok(true),
        (false, true) => Ok(false),
        _ => Err(StructureError::Inconclusive { forward, backward }),
    }
}

/// Rebuilds `S` with `Φ(x) = S⁻¹xS` for an automorphism `Φ` of `M_m`.
///
/// With `F_ij = Φ(E_ij)`: `s₁` is the largest column of `F_11` scaled to unit
/// norm with a real positive leading entry, `sᵢ = F_i1·s₁`, `R = [s₁ … s_m]`
/// and the result is `S = R⁻¹`, so that `Φ(x) = RxR⁻¹`.
pub fn recover_similarity(phi: &LinearMapMatrix, tol: f64) -> Result<ComplexMatrix, StructureError> {
    let m = phi.domain_dim();
    if phi.codomain_dim() != m {
        return Err(StructureError::DimensionMismatch {
            m,
            s: phi.codomain_dim(),
            flags: RangeFlags::default(),
        });
    }
    let identity = ComplexMatrix::identity(m);
    let unit_residual = phi.apply(&identity).distance(&identity) / (m as f64).sqrt();
    if unit_residual > tol {
        return Err(StructureError::ReconstructionFailed {
            stage: "automorphism unit",
            residual: unit_residual,
        });
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let (fij, fkl) = (phi.image(i, j), phi.image(k, l));
                    let product = fij.matmul(fkl);
                    let expected = if j == k { phi.image(i, l).clone() } else { ComplexMatrix::zeros(m, m) };
                    let residual =
                        product.distance(&expected) / (1.0 + fij.frobenius_norm() * fkl.frobenius_norm());
                    if residual > tol {
                        return Err(StructureError::NotAutomorphism { i, j, k, l, residual });
                    }
                }
            }
        }
    }

    let f11 = phi.image(0, 0);
    let probe = (0..m)
        .map(|c| (c, f11.column(c).iter().map(|z| z.norm_sqr()).sum::<f64>()))
        .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best })
        .0;
    let mut s1 = f11.column(probe);
    let norm = s1.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(StructureError::SingularFrame {
            condition: f64::INFINITY,
        });
    }
    let lead = s1
        .iter()
        .copied()
        .find(|z| z.norm() > 1e-8 * norm)
        .expect("a unit-norm vector has an entry above 1e-8");
    let gauge = lead.conj() / (lead.norm() * norm);
    for z in &mut s1 {
        *z *= gauge;
    }
    let first = ComplexMatrix::from_fn(m, 1, |i, _| s1[i]);
    let mut columns = vec![first];
    for i in 1..m {
        columns.push(phi.image(i, 0).matmul(&columns[0]));
    }
    let frame = ComplexMatrix::from_fn(m, m, |i, j| columns[j][(i, 0)]);
    let condition = frame.condition_number();
    if condition.is_nan() || condition > FRAME_CONDITION_CAP {
        return Err(StructureError::SingularFrame { condition });
    }
    let s = frame.inverse()?;
    let residual = relative_map_distance(phi, &similarity_form(&s, false)?);
    if residual > tol {
        return Err(StructureError::ReconstructionFailed {
            stage: "similarity",
            residual,
        });
    }
    Ok(s)
}

/// Decides between nilpotent range, `λS⁻¹xS` and `λS⁻¹xᵗS`.
///
/// Orthogonal rank-one projections must be mapped to elements with zero
/// product (decision tolerance), `s ≤ m` must hold, and a non-nilpotent range
/// forces `s = m`, a scalar `θ(I) = λI` and an (anti-)automorphism `θ/λ`.
pub fn classify_linear_map(
    theta: &LinearMapMatrix,
    model: &mut RandomModel,
    tols: &Tolerances,
) -> Result<LinearClassification, StructureError> {
    let (m, s) = (theta.domain_dim(), theta.codomain_dim());
    let (hypothesis_residual, witness) = projection_hypothesis(theta, model);
    if hypothesis_residual > tols.decide {
        let (p, q) = witness.expect("a positive residual has a witness");
        return Err(StructureError::HypothesisViolated {
            p: Box::new(p),
            q: Box::new(q),
            residual: hypothesis_residual,
        });
    }
    let flags = range_flags(theta, model, tols.decide);
    if s > m {
        return Err(StructureError::DimensionMismatch { m, s, flags });
    }
    let mut evidence = LinearEvidence {
        hypothesis_residual,
        flags,
        scalar_residual: None,
        unit_residual: None,
    };
    if flags.nilpotent {
        return Ok(LinearClassification {
            tag: LinearTag::NilpotentRange,
            lambda: None,
            similarity: None,
            evidence,
        });
    }
    if s < m {
        return Err(StructureError::DimensionMismatch { m, s, flags });
    }

    let unit = theta.apply(&ComplexMatrix::identity(m));
    let lambda = unit.trace() / m as f64;
    let scalar_residual = unit.distance(&ComplexMatrix::identity(m).scale(lambda)) / unit.frobenius_norm().max(f64::MIN_POSITIVE);
    evidence.scalar_residual = Some(scalar_residual);
    if lambda == ZERO || scalar_residual > tols.decide {
        return Err(StructureError::ReconstructionFailed {
            stage: "scalar unit image",
            residual: scalar_residual,
        });
    }
    let phi = theta.scale(lambda.inv());
    let anti = detect_antihomomorphism(&phi, tols.verify)?;
    let automorphism = if anti { phi.precompose_transpose() } else { phi };
    let similarity = recover_similarity(&automorphism, tols.decide)?;
    let reconstructed = similarity_form(&similarity, anti)?.scale(lambda);
    let unit_residual = relative_map_distance(theta, &reconstructed);
    evidence.unit_residual = Some(unit_residual);
    if unit_residual > tols.decide {
        return Err(StructureError::ReconstructionFailed {
            stage: "linear reconstruction",
            residual: unit_residual,
        });
    }
    Ok(LinearClassification {
        tag: if anti { LinearTag::TransposeSimilarity } else { LinearTag::Similarity },
        lambda: Some(lambda),
        similarity: Some(similarity),
        evidence,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifyParams {
    pub n_max: usize,
    /// Quadrature nodes; `None` means `2·n_max + 2`.
    pub nodes: Option<usize>,
    pub tolerances: Tolerances,
    pub trials: usize,
    pub seed: u64,
    /// Forces the anchor degree instead of the smallest admissible one.
    pub anchor: Option<usize>,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        Self {
            n_max: DEFAULT_N_MAX,
            nodes: None,
            tolerances: Tolerances::default(),
            trials: DEFAULT_TRIALS,
            seed: 0,
            anchor: None,
        }
    }
}

impl ClassifyParams {
    pub fn node_count(&self) -> usize {
        self.nodes.unwrap_or_else(|| default_nodes(self.n_max))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassificationTag {
    ZeroTraceRange,
    Standard,
    TransposeStandard,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentFit {
    pub degree: usize,
    pub lambda: Complex64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    /// `m ≥ 2` and `m ≥ s`, the setting in which a definitive tag is
    /// guaranteed to exist.
    pub dimension_hypothesis: bool,
    pub contour: ContourRadius,
    pub nodes: usize,
    pub n_max: usize,
    pub additivity: Verdict,
    pub multiplicativity: Verdict,
    pub constant_term_norm: f64,
    pub degree_norms: Vec<f64>,
    pub active_degrees: Vec<usize>,
    /// `(degree, max |trace Tₙ(dⁿ)| / (1 + ‖Tₙ‖))` for each active degree.
    pub trace_scores: Vec<(usize, f64)>,
    /// Trace-zero, nilpotency and trivial-multiplication checks on sampled
    /// values of `H`.
    pub range_flags: RangeFlags,
    pub component_fits: Vec<ComponentFit>,
    pub linear: Option<LinearClassification>,
    pub reconstruction_residual: Option<f64>,
    pub zero_product: Option<Verdict>,
    pub warnings: Vec<Warning>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub tag: ClassificationTag,
    /// `λ₁, λ₂, …`; empty for a trace-free range.
    pub lambdas: Vec<Complex64>,
    #[serde(rename = "S")]
    pub similarity: Option<ComplexMatrix>,
    pub k_anchor: Option<usize>,
    pub report: Diagnostics,
}

impl Classification {
    /// The recovered standard form, when there is one.
    pub fn standard_form(&self, radius: f64) -> Option<StandardFormSpec> {
        let s = self.similarity.clone()?;
        StandardFormSpec::new(self.lambdas.clone(), s, self.tag == ClassificationTag::TransposeStandard, radius).ok()
    }
}

/// Degrees `n ≥ 1` whose norm exceeds `ZERO_COMPONENT_TOL` times the largest
/// norm in `norms` (indexed by degree).
pub fn active_degrees(norms: &[f64]) -> Vec<usize> {
    let top = norms.iter().copied().fold(0.0, f64::max);
    (1..norms.len()).filter(|&n| norms[n] > ZERO_COMPONENT_TOL * top).collect()
}

fn sample_in_ball(model: &mut RandomModel, m: usize, radius: f64) -> ComplexMatrix {
    let x = if model.index(2) == 0 { model.hermitian(m) } else { model.ginibre(m, m) };
    normalize_spectral(&x).scale_real(model.uniform_positive(radius / 2.0))
}

fn holo_range_flags(h: &HoloFunction, model: &mut RandomModel, tol: f64) -> RangeFlags {
    let values: Vec<ComplexMatrix> = (0..RECONSTRUCTION_SAMPLES)
        .map(|_| h.evaluate_unchecked(&sample_in_ball(model, h.domain_dim(), h.radius())))
        .collect();
    RangeFlags {
        nilpotent: values.iter().all(|y| is_nilpotent(y, NILPOTENT_TOL)),
        trace_zero: values.iter().all(|y| y.trace().norm() <= tol * (1.0 + y.frobenius_norm())),
        trivial_multiplication: values
            .iter()
            .all(|x| values.iter().all(|y| product_residual(x, y) <= tol)),
    }
}

/// The full pipeline: hypothesis gate, component extraction, linearization,
/// anchor search, linear classification of the anchor, fitting of the other
/// components, reconstruction and the zero-product check.
pub fn classify_holomorphic(h: &HoloFunction, params: &ClassifyParams) -> Result<Classification, StructureError> {
    let tols = params.tolerances;
    let root = RandomModel::new(params.seed);
    let (m, s) = (h.domain_dim(), h.codomain_dim());
    let nodes = params.node_count();

    let additivity = test_orthogonal_additivity(h, &mut root.fork(1), params.trials, tols.verify)?;
    if !additivity.passed {
        return Err(StructureError::HypothesisFailed {
            which: "orthogonal additivity",
            verdict: Box::new(additivity),
        });
    }
    let multiplicativity = test_orthogonal_multiplicativity(h, &mut root.fork(2), params.trials, tols.verify)?;
    if !multiplicativity.passed {
        return Err(StructureError::HypothesisFailed {
            which: "orthogonal multiplicativity",
            verdict: Box::new(multiplicativity),
        });
    }

    let components = extract_all(h, params.n_max, nodes, ContourRadius::Adaptive)?;
    let warnings: Vec<Warning> = components.iter().flat_map(|p| p.warnings().to_vec()).collect();
    let probes = probe_set(m);
    let mut degree_norms = Vec::with_capacity(components.len());
    for p in &components {
        let mut sup = 0.0f64;
        for x in &probes {
            sup = sup.max(p.evaluate(x)?.frobenius_norm());
        }
        degree_norms.push(sup);
    }
    let constant_term_norm = degree_norms[0];
    if constant_term_norm > tols.verify {
        return Err(StructureError::NonzeroConstantTerm {
            norm: constant_term_norm,
        });
    }
    let active = active_degrees(&degree_norms);

    let mut linear_parts = Vec::with_capacity(active.len());
    for &n in &active {
        let t = linearize(&components[n], &mut root.fork(100 + n as u64), tols.verify)?;
        linear_parts.push((n, t));
    }

    let mut anchor_model = root.fork(3);
    let mut samples = vec![ComplexMatrix::identity(m)];
    for _ in 0..ANCHOR_SAMPLES {
        samples.push(normalize_spectral(&anchor_model.hermitian(m)));
    }
    let trace_scores: Vec<(usize, f64)> = linear_parts
        .iter()
        .map(|(n, t)| {
            let score = samples
                .iter()
                .map(|d| t.apply(&d.pow(*n)).trace().norm())
                .fold(0.0, f64::max)
                / (1.0 + t.norm());
            (*n, score)
        })
        .collect();
    let range = holo_range_flags(h, &mut root.fork(5), tols.decide);

    let mut report = Diagnostics {
        dimension_hypothesis: m >= 2 && m >= s,
        contour: ContourRadius::Adaptive,
        nodes,
        n_max: params.n_max,
        additivity,
        multiplicativity,
        constant_term_norm,
        degree_norms,
        active_degrees: active.clone(),
        trace_scores: trace_scores.clone(),
        range_flags: range,
        component_fits: Vec::new(),
        linear: None,
        reconstruction_residual: None,
        zero_product: None,
        warnings,
    };

    let anchor = match params.anchor {
        Some(k) => {
            let admissible = trace_scores.iter().any(|&(n, score)| n == k && score > tols.decide);
            if !admissible {
                return Err(StructureError::ReconstructionFailed {
                    stage: "requested anchor has trace-free component",
                    residual: trace_scores.iter().find(|e| e.0 == k).map_or(0.0, |e| e.1),
                });
            }
            Some(k)
        }
        None => trace_scores.iter().find(|&&(_, score)| score > tols.decide).map(|e| e.0),
    };

    let Some(k) = anchor else {
        if !range.trace_zero {
            return Err(StructureError::ReconstructionFailed {
                stage: "trace-free range check",
                residual: f64::NAN,
            });
        }
        return Ok(Classification {
            tag: ClassificationTag::ZeroTraceRange,
            lambdas: Vec::new(),
            similarity: None,
            k_anchor: None,
            report,
        });
    };

    let t_k = &linear_parts.iter().find(|(n, _)| *n == k).expect("anchor is active").1;
    let linear = match classify_linear_map(t_k, &mut root.fork(4), &tols) {
        Ok(c) => c,
        Err(StructureError::DimensionMismatch { m, s, flags }) => {
            return Err(StructureError::MixedForm {
                degrees: vec![k],
                detail: format!("anchor component maps M_{m} into M_{s} with nonzero trace ({flags:?})"),
            })
        }
        Err(StructureError::Inconclusive { forward, backward }) => {
            return Err(StructureError::MixedForm {
                degrees: vec![k],
                detail: format!(
                    "anchor component is neither a homomorphism nor an anti-homomorphism \
                     (forward {forward:e}, backward {backward:e})"
                ),
            })
        }
        Err(e) => return Err(e),
    };
    let transpose = match linear.tag {
        LinearTag::Similarity => false,
        LinearTag::TransposeSimilarity => true,
        LinearTag::NilpotentRange => {
            return Err(StructureError::MixedForm {
                degrees: vec![k],
                detail: "anchor component has nonzero trace but nilpotent range".into(),
            })
        }
    };
    let similarity = linear.similarity.clone().expect("similarity tag carries S");
    let lambda_k = linear.lambda.expect("similarity tag carries λ");
    report.linear = Some(linear);

    // Normalized frame: T̂ₙ(y) = S·Tₙ(y')·S⁻¹ / λ_k should be (λₙ/λ_k)·y.
    let s_inv = similarity.inverse()?;
    let form = similarity_form(&similarity, transpose)?;
    let mut lambdas = vec![ZERO; active.last().copied().unwrap_or(0)];
    let mut mixed = Vec::new();
    for (n, t) in &linear_parts {
        let oriented = if transpose { t.precompose_transpose() } else { t.clone() };
        let normalized = oriented.sandwich(&similarity, &s_inv).scale(lambda_k.inv());
        let ratio = normalized.apply(&ComplexMatrix::identity(m)).trace() / m as f64;
        let lambda_n = ratio * lambda_k;
        let residual = t.distance(&form.scale(lambda_n)) / t.norm().max(f64::MIN_POSITIVE);
        report.component_fits.push(ComponentFit {
            degree: *n,
            lambda: lambda_n,
            residual,
        });
        if residual > tols.decide {
            mixed.push(*n);
        } else {
            lambdas[n - 1] = lambda_n;
        }
    }
    if !mixed.is_empty() {
        return Err(StructureError::MixedForm {
            degrees: mixed,
            detail: "components are neither zero nor of the anchor's similarity form".into(),
        });
    }
    debug_assert_eq!(s, m);

    let spec = StandardFormSpec::new(lambdas.clone(), similarity.clone(), transpose, h.radius())?;
    let mut sample_model = root.fork(6);
    let mut reconstruction_residual = 0.0f64;
    for _ in 0..RECONSTRUCTION_SAMPLES {
        let x = sample_in_ball(&mut sample_model, m, h.radius());
        let hx = h.evaluate_unchecked(&x);
        let rx = spec.to_holo().evaluate_unchecked(&x);
        let r = hx.distance(&rx) / hx.frobenius_norm().max(f64::MIN_POSITIVE);
        reconstruction_residual = reconstruction_residual.max(r);
    }
    report.reconstruction_residual = Some(reconstruction_residual);
    if reconstruction_residual > tols.decide {
        return Err(StructureError::ReconstructionFailed {
            stage: "holomorphic reconstruction",
            residual: reconstruction_residual,
        });
    }

    let zero_product = test_zero_product_preservation(h, &mut root.fork(7), params.trials, tols.verify)?;
    if transpose && zero_product.passed {
        return Err(StructureError::ReconstructionFailed {
            stage: "transpose form passed the zero-product test",
            residual: zero_product.max_residual,
        });
    }
    report.zero_product = Some(zero_product);

    Ok(Classification {
        tag: if transpose { ClassificationTag::TransposeStandard } else { ClassificationTag::Standard },
        lambdas,
        similarity: Some(similarity),
        k_anchor: Some(k),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_similarity;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn conj_map(s: &ComplexMatrix, lambda: Complex64, transpose: bool) -> LinearMapMatrix {
        similarity_form(s, transpose).unwrap().scale(lambda)
    }

    fn scalar_multiple(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
        // a = c·b for some scalar c
        let (idx, _) = b
            .as_slice()
            .iter()
            .enumerate()
            .fold((0, 0.0), |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best });
        let ratio = a.as_slice()[idx] / b.as_slice()[idx];
        a.distance(&b.scale(ratio)) <= 1e-9 * a.frobenius_norm()
    }

    fn example_nilpotent() -> LinearMapMatrix {
        LinearMapMatrix::from_fn(2, 2, |e| ComplexMatrix::unit(2, 0, 1).scale(e[(0, 0)]))
    }

    #[test]
    fn jordan_relation_on_standard_maps() {
        let mut model = RandomModel::new(1);
        let s = random_similarity(&mut model, 3, 10.0);
        for map in [conj_map(&s, c(1.0), false), LinearMapMatrix::identity(3).precompose_transpose(), example_nilpotent()] {
            let v = test_jordan_relation(&map, &mut model, 50, 1e-9);
            assert!(v.passed, "{v:?}");
        }
    }

    #[test]
    fn similarity_map_is_recovered() {
        let mut model = RandomModel::new(2);
        let s = random_similarity(&mut model, 4, 20.0);
        let theta = conj_map(&s, c(3.0), false);
        let cls = classify_linear_map(&theta, &mut model, &Tolerances::default()).unwrap();
        assert_eq!(cls.tag, LinearTag::Similarity);
        assert!((cls.lambda.unwrap() - c(3.0)).norm() < 1e-10);
        assert!(scalar_multiple(cls.similarity.as_ref().unwrap(), &s));
        assert!(relative_map_distance(&cls.reconstruct().unwrap(), &theta) <= 1e-9);
    }

    #[test]
    fn transpose_map_is_recovered() {
        let theta = LinearMapMatrix::identity(3).precompose_transpose().scale(c(2.0));
        let cls = classify_linear_map(&theta, &mut RandomModel::new(3), &Tolerances::default()).unwrap();
        assert_eq!(cls.tag, LinearTag::TransposeSimilarity);
        assert!((cls.lambda.unwrap() - c(2.0)).norm() < 1e-12);
        assert!(scalar_multiple(cls.similarity.as_ref().unwrap(), &ComplexMatrix::identity(3)));
    }

    #[test]
    fn nilpotent_example_is_detected() {
        let cls = classify_linear_map(&example_nilpotent(), &mut RandomModel::new(4), &Tolerances::default()).unwrap();
        assert_eq!(cls.tag, LinearTag::NilpotentRange);
        assert!(cls.evidence.flags.trace_zero);
    }

    #[test]
    fn hypothesis_violation_has_witness() {
        // θ(x) = x + trace(x)·E_12 sends E_11, E_22 to elements with nonzero product
        let theta = LinearMapMatrix::from_fn(2, 2, |e| &e.clone() + &ComplexMatrix::unit(2, 0, 1).scale(e.trace()));
        match classify_linear_map(&theta, &mut RandomModel::new(5), &Tolerances::default()) {
            Err(StructureError::HypothesisViolated { p, q, residual }) => {
                assert!(p.matmul(&q).frobenius_norm() < 1e-12);
                assert!(residual > 1e-3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn antihomomorphism_detection() {
        let id = LinearMapMatrix::identity(3);
        assert!(!detect_antihomomorphism(&id, 1e-9).unwrap());
        assert!(detect_antihomomorphism(&id.precompose_transpose(), 1e-9).unwrap());
        let s = random_similarity(&mut RandomModel::new(6), 3, 10.0);
        assert!(!detect_antihomomorphism(&conj_map(&s, c(1.0), false), 1e-9).unwrap());
        let zero = LinearMapMatrix::from_fn(2, 2, |_| ComplexMatrix::zeros(2, 2));
        assert!(matches!(detect_antihomomorphism(&zero, 1e-9), Err(StructureError::Inconclusive { .. })));
    }

    #[test]
    fn recover_identity_and_unitary() {
        let s = recover_similarity(&LinearMapMatrix::identity(3), 1e-9).unwrap();
        assert!(scalar_multiple(&s, &ComplexMatrix::identity(3)));
        let u = RandomModel::new(7).unitary(4);
        let phi = LinearMapMatrix::from_fn(4, 4, |e| u.adjoint().matmul(e).matmul(&u));
        let s = recover_similarity(&phi, 1e-9).unwrap();
        assert!(relative_map_distance(&similarity_form(&s, false).unwrap(), &phi) < 1e-12);
        assert!(scalar_multiple(&s, &u));
    }

    #[test]
    fn recover_shear_by_hand() {
        // S₀ = [[1,1],[0,1]], S₀⁻¹ = [[1,−1],[0,1]]: F_11 = S₀⁻¹E_11S₀ = [[1,1],[0,0]]
        let s0 = ComplexMatrix::from_rows(&[vec![c(1.0), c(1.0)], vec![c(0.0), c(1.0)]]).unwrap();
        let phi = conj_map(&s0, c(1.0), false);
        let f11 = ComplexMatrix::from_rows(&[vec![c(1.0), c(1.0)], vec![c(0.0), c(0.0)]]).unwrap();
        assert!(phi.image(0, 0).distance(&f11) < 1e-15);
        let s = recover_similarity(&phi, 1e-9).unwrap();
        assert!(relative_map_distance(&similarity_form(&s, false).unwrap(), &phi) <= 1e-10);
        assert!(scalar_multiple(&s, &s0));
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let theta = example_nilpotent();
        assert!(recover_similarity(&theta, 1e-9).is_err());
        let sum = LinearMapMatrix::identity(2).scale(c(0.5));
        assert!(matches!(
            recover_similarity(&sum, 1e-9),
            Err(StructureError::ReconstructionFailed { .. })
        ));
    }

    #[test]
    fn classify_simple_standard_form() {
        let mut model = RandomModel::new(8);
        let s = random_similarity(&mut model, 3, 20.0);
        let spec = StandardFormSpec::new(vec![c(1.0), c(-0.5), c(0.25)], s.clone(), false, 1.0).unwrap();
        let cls = classify_holomorphic(&spec.to_holo(), &ClassifyParams::default()).unwrap();
        assert_eq!(cls.tag, ClassificationTag::Standard);
        assert_eq!(cls.k_anchor, Some(1));
        for (got, want) in cls.lambdas.iter().zip(spec.lambdas()) {
            assert!((got - want).norm() < 1e-6, "{got} vs {want}");
        }
        assert!(scalar_multiple(cls.similarity.as_ref().unwrap(), &s));
        assert!(cls.report.zero_product.as_ref().unwrap().passed);
    }

    #[test]
    fn classify_transpose_form() {
        let spec = StandardFormSpec::new(vec![c(1.0), c(1.0)], ComplexMatrix::identity(2), true, 1.0).unwrap();
        let cls = classify_holomorphic(&spec.to_holo(), &ClassifyParams::default()).unwrap();
        assert_eq!(cls.tag, ClassificationTag::TransposeStandard);
        let zp = cls.report.zero_product.as_ref().unwrap();
        assert!(!zp.passed);
        let w = zp.witness.as_ref().unwrap();
        assert!(w.a.matmul(&w.b).frobenius_norm() < 1e-12);
    }

    #[test]
    fn classify_nilpotent_example() {
        let h = HoloFunction::linear("nilpotent", example_nilpotent(), 1.0);
        let cls = classify_holomorphic(&h, &ClassifyParams::default()).unwrap();
        assert_eq!(cls.tag, ClassificationTag::ZeroTraceRange);
        assert!(cls.report.range_flags.trace_zero && cls.report.range_flags.nilpotent);
    }

    #[test]
    fn gate_rejects_non_multiplicative() {
        let h = HoloFunction::new("x+x^t^2", 2, 2, 1.0, |x| &x.clone() + &x.transpose().pow(2));
        assert!(matches!(
            classify_holomorphic(&h, &ClassifyParams::default()),
            Err(StructureError::HypothesisFailed { which: "orthogonal multiplicativity", .. })
        ));
    }

    #[test]
    fn block_sum_with_transpose_is_mixed() {
        let h = HoloFunction::new("x+x^t", 2, 4, 1.0, |x| x.direct_sum(&x.transpose()));
        match classify_holomorphic(&h, &ClassifyParams::default()) {
            Err(StructureError::MixedForm { degrees, .. }) => assert_eq!(degrees, vec![1]),
            other => panic!("{other:?}"),
        }
    }
}
