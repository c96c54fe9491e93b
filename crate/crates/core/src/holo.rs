//! Holomorphic matrix functions and their homogeneous Taylor components.
//!
//! A [`HoloFunction`] is a black-box evaluator on the operator-norm ball
//! `B(0; r)` of `M_m` with values in `M_s`. Components are pulled out of it
//! with a roots-of-unity discretization of the Cauchy integral
//! ([`extract_component`]), turned into symmetric multilinear forms with the
//! polarization identity ([`polarize`]) and, when orthogonally additive,
//! linearized as `P(x) = T(xⁿ)` ([`linearize`]).

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{HoloError, MatrixError};
use crate::matrix::{ComplexMatrix, LuFactorization, ZERO};
use crate::random::{idempotent_spanning_set, normalize_spectral, RandomModel};

/// Default truncation degree.
pub const DEFAULT_N_MAX: usize = 8;

/// Seed of the fixed probe set used by [`estimate_degree_cutoff`].
pub const PROBE_SEED: u64 = 0x005E_ED0F_9E0B;

/// Number of random matrices drawn for the [`linearize`] check.
pub const LINEARIZE_SAMPLE: usize = 32;

type Evaluator = Arc<dyn Fn(&ComplexMatrix) -> ComplexMatrix + Send + Sync>;
type FallibleEvaluator = Arc<dyn Fn(&ComplexMatrix) -> Result<ComplexMatrix, HoloError> + Send + Sync>;

/// Default quadrature node count for a truncation degree.
pub fn default_nodes(n_max: usize) -> usize {
    2 * n_max + 2
}

/// A matrix-valued function on `B(0; r) ⊂ M_m` with values in `M_s`.
#[derive(Clone)]
pub struct HoloFunction {
    label: String,
    m: usize,
    s: usize,
    radius: f64,
    evaluator: Evaluator,
}

impl HoloFunction {
    pub fn new(
        label: impl Into<String>,
        m: usize,
        s: usize,
        radius: f64,
        f: impl Fn(&ComplexMatrix) -> ComplexMatrix + Send + Sync + 'static,
    ) -> Self {
        assert!(m > 0 && s > 0, "dimensions must be positive");
        assert!(radius.is_finite() && radius > 0.0, "radius must be a positive real");
        Self {
            label: label.into(),
            m,
            s,
            radius,
            evaluator: Arc::new(f),
        }
    }

    /// A linear map viewed as a (degree-one) holomorphic function.
    pub fn linear(label: impl Into<String>, map: LinearMapMatrix, radius: f64) -> Self {
        let (m, s) = (map.domain_dim(), map.codomain_dim());
        Self::new(label, m, s, radius, move |x| map.apply(x))
    }

    /// `x ↦ Σ Tₙ(xⁿ)` over the given `(degree, Tₙ)` parts.
    pub fn from_linear_parts(label: impl Into<String>, parts: Vec<(usize, LinearMapMatrix)>, radius: f64) -> Self {
        assert!(!parts.is_empty(), "at least one part is required");
        let m = parts[0].1.domain_dim();
        let s = parts[0].1.codomain_dim();
        assert!(
            parts.iter().all(|(_, t)| t.domain_dim() == m && t.codomain_dim() == s),
            "parts must share dimensions"
        );
        Self::new(label, m, s, radius, move |x| {
            parts.iter().fold(ComplexMatrix::zeros(s, s), |acc, (n, t)| &acc + &t.apply(&x.pow(*n)))
        })
    }

    pub fn zero(m: usize, s: usize, radius: f64) -> Self {
        Self::new("zero", m, s, radius, move |_| ComplexMatrix::zeros(s, s))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain_dim(&self) -> usize {
        self.m
    }

    pub fn codomain_dim(&self) -> usize {
        self.s
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    fn check_shape(&self, x: &ComplexMatrix) -> Result<(), HoloError> {
        if x.shape() != (self.m, self.m) {
            return Err(HoloError::ShapeMismatch {
                expected: (self.m, self.m),
                found: x.shape(),
            });
        }
        Ok(())
    }

    /// Evaluates after checking the shape and `‖x‖₂ < r`.
    pub fn evaluate(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, HoloError> {
        self.check_shape(x)?;
        let norm = x.spectral_norm();
        if norm >= self.radius {
            return Err(HoloError::OutOfDomain {
                norm,
                radius: self.radius,
            });
        }
        Ok((self.evaluator)(x))
    }

    /// Evaluates without the domain check; callers guarantee `x` is inside.
    pub fn evaluate_unchecked(&self, x: &ComplexMatrix) -> ComplexMatrix {
        (self.evaluator)(x)
    }
}

impl fmt::Debug for HoloFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HoloFunction")
            .field("label", &self.label)
            .field("m", &self.m)
            .field("s", &self.s)
            .field("radius", &self.radius)
            .finish()
    }
}

/// `H(x) = Σₙ λₙ S⁻¹yⁿS` with `y = x` or `y = xᵗ`.
#[derive(Clone, Debug)]
pub struct StandardFormSpec {
    lambdas: Vec<Complex64>,
    similarity: ComplexMatrix,
    transpose: bool,
    radius: f64,
    lu: LuFactorization,
}

impl StandardFormSpec {
    pub fn new(
        lambdas: Vec<Complex64>,
        similarity: ComplexMatrix,
        transpose: bool,
        radius: f64,
    ) -> Result<Self, HoloError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(HoloError::Invalid(format!("radius must be a positive real, got {radius}")));
        }
        let lu = similarity.lu()?;
        if !similarity.condition_number().is_finite() {
            return Err(MatrixError::Singular.into());
        }
        Ok(Self {
            lambdas,
            similarity,
            transpose,
            radius,
            lu,
        })
    }

    /// `λ₁, λ₂, …` (index 0 is degree 1).
    pub fn lambdas(&self) -> &[Complex64] {
        &self.lambdas
    }

    pub fn similarity(&self) -> &ComplexMatrix {
        &self.similarity
    }

    pub fn is_transpose(&self) -> bool {
        self.transpose
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.similarity.rows()
    }

    /// `S⁻¹ y S`.
    pub fn conjugate(&self, y: &ComplexMatrix) -> ComplexMatrix {
        self.lu.solve(&y.matmul(&self.similarity))
    }

    fn evaluate_unchecked(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let y = if self.transpose { x.transpose() } else { x.clone() };
        self.conjugate(&y.power_series(&self.lambdas))
    }

    /// The exact degree-`n` component `λₙ S⁻¹yⁿS`.
    pub fn component(&self, n: usize) -> HomogeneousComponent {
        let lambda = if n >= 1 { self.lambdas.get(n - 1).copied().unwrap_or(ZERO) } else { ZERO };
        let spec = self.clone();
        let m = self.dim();
        HomogeneousComponent::from_fn(n, m, m, self.radius, move |x| {
            let y = if spec.transpose { x.transpose() } else { x.clone() };
            spec.conjugate(&y.pow(n)).scale(lambda)
        })
    }

    /// The exact linearization `y ↦ λₙ S⁻¹y'S` of the degree-`n` component.
    pub fn linear_part(&self, n: usize) -> LinearMapMatrix {
        let lambda = if n >= 1 { self.lambdas.get(n - 1).copied().unwrap_or(ZERO) } else { ZERO };
        let m = self.dim();
        LinearMapMatrix::from_fn(m, m, |e| {
            let y = if self.transpose { e.transpose() } else { e.clone() };
            self.conjugate(&y).scale(lambda)
        })
    }

    pub fn to_holo(&self) -> HoloFunction {
        let spec = self.clone();
        let m = self.dim();
        let label = if self.transpose { "standard-form(transpose)" } else { "standard-form" };
        HoloFunction::new(label, m, m, self.radius, move |x| spec.evaluate_unchecked(x))
    }
}

pub fn eval_standard_form(spec: &StandardFormSpec, x: &ComplexMatrix) -> Result<ComplexMatrix, HoloError> {
    let m = spec.dim();
    if x.shape() != (m, m) {
        return Err(HoloError::ShapeMismatch {
            expected: (m, m),
            found: x.shape(),
        });
    }
    let norm = x.spectral_norm();
    if norm >= spec.radius {
        return Err(HoloError::OutOfDomain {
            norm,
            radius: spec.radius,
        });
    }
    Ok(spec.evaluate_unchecked(x))
}

/// How the quadrature radius `ρ` is chosen for an evaluation point `x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContourRadius {
    /// The same `ρ` for every point.
    Fixed(f64),
    /// `ρ = r / (2(1 + ‖x‖₂))`, which keeps every node inside `B(0; r/2)`.
    Adaptive,
}

impl ContourRadius {
    pub fn rho(&self, radius: f64, x_norm: f64) -> f64 {
        match *self {
            ContourRadius::Fixed(rho) => rho,
            ContourRadius::Adaptive => radius / (2.0 * (1.0 + x_norm)),
        }
    }
}

/// Non-fatal conditions attached to extraction results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Fewer quadrature nodes than twice the requested degree; higher degrees
    /// may fold onto the requested one.
    AliasingRisk { nodes: usize, degree: usize },
}

/// An `n`-homogeneous polynomial `M_m → M_s`.
#[derive(Clone)]
pub struct HomogeneousComponent {
    degree: usize,
    m: usize,
    s: usize,
    radius: f64,
    warnings: Vec<Warning>,
    evaluator: FallibleEvaluator,
}

impl HomogeneousComponent {
    /// Wraps an exact formula. `radius` is the scale used when testers sample
    /// inputs for it.
    pub fn from_fn(
        degree: usize,
        m: usize,
        s: usize,
        radius: f64,
        f: impl Fn(&ComplexMatrix) -> ComplexMatrix + Send + Sync + 'static,
    ) -> Self {
        Self {
            degree,
            m,
            s,
            radius,
            warnings: Vec::new(),
            evaluator: Arc::new(move |x| Ok(f(x))),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn domain_dim(&self) -> usize {
        self.m
    }

    pub fn codomain_dim(&self) -> usize {
        self.s
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    pub fn evaluate(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, HoloError> {
        if x.shape() != (self.m, self.m) {
            return Err(HoloError::ShapeMismatch {
                expected: (self.m, self.m),
                found: x.shape(),
            });
        }
        (self.evaluator)(x)
    }
}

impl fmt::Debug for HomogeneousComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomogeneousComponent")
            .field("degree", &self.degree)
            .field("m", &self.m)
            .field("s", &self.s)
            .field("warnings", &self.warnings)
            .finish()
    }
}

/// The degree-`n` Taylor component of `h` by `N`-point quadrature:
/// `Pₙ(x) ≈ ρ⁻ⁿ (1/N) Σₖ ω^{-kn} H(ρωᵏx)`, `ω = e^{2πi/N}`. Exact (up to
/// roundoff) when `h` is a polynomial of degree `< N`.
pub fn extract_component(
    h: &HoloFunction,
    degree: usize,
    nodes: usize,
    rho: ContourRadius,
) -> Result<HomogeneousComponent, HoloError> {
    if nodes == 0 {
        return Err(HoloError::NoNodes);
    }
    if let ContourRadius::Fixed(r) = rho {
        if !(r.is_finite() && r > 0.0) {
            return Err(HoloError::Invalid(format!("contour radius must be positive, got {r}")));
        }
    }
    let mut warnings = Vec::new();
    if nodes < 2 * degree {
        warnings.push(Warning::AliasingRisk { nodes, degree });
    }
    // ω^{-kn}, with kn reduced mod N before the angle is formed
    let weights: Vec<Complex64> = (0..nodes)
        .map(|k| {
            let e = (k * degree) % nodes;
            Complex64::from_polar(1.0 / nodes as f64, -2.0 * PI * e as f64 / nodes as f64)
        })
        .collect();
    let roots: Vec<Complex64> = (0..nodes)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64))
        .collect();

    let h = h.clone();
    let (m, s, radius) = (h.m, h.s, h.radius);
    let evaluator = move |x: &ComplexMatrix| -> Result<ComplexMatrix, HoloError> {
        let x_norm = x.spectral_norm();
        let rho = rho.rho(radius, x_norm);
        if rho * x_norm >= radius {
            return Err(HoloError::OutOfDomain {
                norm: rho * x_norm,
                radius,
            });
        }
        let mut acc = ComplexMatrix::zeros(s, s);
        for (w, z) in weights.iter().zip(&roots) {
            let value = h.evaluate_unchecked(&x.scale(z * rho));
            acc = &acc + &value.scale(*w);
        }
        Ok(acc.scale_real(rho.powi(-(degree as i32))))
    };
    Ok(HomogeneousComponent {
        degree,
        m,
        s,
        radius,
        warnings,
        evaluator: Arc::new(evaluator),
    })
}

/// Components of degrees `0..=n_max`.
pub fn extract_all(
    h: &HoloFunction,
    n_max: usize,
    nodes: usize,
    rho: ContourRadius,
) -> Result<Vec<HomogeneousComponent>, HoloError> {
    (0..=n_max).map(|n| extract_component(h, n, nodes, rho)).collect()
}

/// The symmetric `n`-linear operator recovered from an `n`-homogeneous `P`.
#[derive(Clone, Debug)]
pub struct PolarizedForm {
    component: HomogeneousComponent,
}

/// Polarization: `T(x₁,…,xₙ) = (1/(2ⁿn!)) Σ_ε ε₁⋯εₙ P(Σ εᵢxᵢ)`.
pub fn polarize(p: &HomogeneousComponent) -> Result<PolarizedForm, HoloError> {
    if p.degree == 0 {
        return Err(HoloError::DegreeZero);
    }
    Ok(PolarizedForm { component: p.clone() })
}

impl PolarizedForm {
    pub fn arity(&self) -> usize {
        self.component.degree
    }

    pub fn evaluate(&self, args: &[ComplexMatrix]) -> Result<ComplexMatrix, HoloError> {
        let n = self.arity();
        if args.len() != n {
            return Err(HoloError::ArityMismatch {
                expected: n,
                found: args.len(),
            });
        }
        let m = self.component.m;
        let mut acc = ComplexMatrix::zeros(self.component.s, self.component.s);
        for mask in 0u32..(1u32 << n) {
            let mut point = ComplexMatrix::zeros(m, m);
            let mut sign = 1.0;
            for (i, x) in args.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    point = &point - x;
                    sign = -sign;
                } else {
                    point = &point + x;
                }
            }
            acc = &acc + &self.component.evaluate(&point)?.scale_real(sign);
        }
        let factorial: f64 = (1..=n).map(|k| k as f64).product();
        let norm = 2f64.powi(n as i32) * factorial;
        Ok(acc.scale_real(1.0 / norm))
    }
}

/// A linear map `M_m → M_s` stored by its values on the matrix units.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMapMatrix {
    m: usize,
    s: usize,
    images: Vec<ComplexMatrix>,
}

impl LinearMapMatrix {
    /// `images[i*m + j]` is the image of `E_ij`.
    pub fn new(m: usize, s: usize, images: Vec<ComplexMatrix>) -> Result<Self, HoloError> {
        if images.len() != m * m {
            return Err(HoloError::Invalid(format!(
                "a map on M_{m} needs {} unit images, got {}",
                m * m,
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|y| y.shape() != (s, s)) {
            return Err(HoloError::ShapeMismatch {
                expected: (s, s),
                found: bad.shape(),
            });
        }
        Ok(Self { m, s, images })
    }

    /// Samples `f` on the matrix units.
    pub fn from_fn(m: usize, s: usize, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        let images = (0..m * m).map(|k| f(&ComplexMatrix::unit(m, k / m, k % m))).collect();
        Self::new(m, s, images).expect("closure returns s x s matrices")
    }

    pub fn identity(m: usize) -> Self {
        Self::from_fn(m, m, |e| e.clone())
    }

    pub fn domain_dim(&self) -> usize {
        self.m
    }

    pub fn codomain_dim(&self) -> usize {
        self.s
    }

    pub fn image(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.images[i * self.m + j]
    }

    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    /// `Σ x_ij · images[(i,j)]`.
    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(x.shape(), (self.m, self.m), "linear map input shape");
        let mut out = vec![ZERO; self.s * self.s];
        for (xij, image) in x.as_slice().iter().zip(&self.images) {
            if *xij == ZERO {
                continue;
            }
            for (o, v) in out.iter_mut().zip(image.as_slice()) {
                *o += xij * v;
            }
        }
        ComplexMatrix::from_vec(self.s, self.s, out).expect("shape is s x s")
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            m: self.m,
            s: self.s,
            images: self.images.iter().map(|y| y.scale(alpha)).collect(),
        }
    }

    /// `x ↦ θ(xᵗ)`.
    pub fn precompose_transpose(&self) -> Self {
        let m = self.m;
        let images = (0..m * m).map(|k| self.images[(k % m) * m + k / m].clone()).collect();
        Self { m, s: self.s, images }
    }

    /// `x ↦ left · θ(x) · right`.
    pub fn sandwich(&self, left: &ComplexMatrix, right: &ComplexMatrix) -> Self {
        let images: Vec<ComplexMatrix> = self.images.iter().map(|y| left.matmul(y).matmul(right)).collect();
        let s = images[0].rows();
        Self { m: self.m, s, images }
    }

    /// `sqrt(Σ ‖θ(E_ij)‖_F²)`.
    pub fn norm(&self) -> f64 {
        self.images.iter().map(|y| y.frobenius_norm().powi(2)).sum::<f64>().sqrt()
    }

    /// Largest unit-image distance `max ‖θ(E_ij) − φ(E_ij)‖_F`.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!((self.m, self.s), (other.m, other.s), "map shape mismatch");
        self.images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }
}

/// Anything the property testers can sample: a map `M_m → M_s` with a scale
/// `r` such that inputs of spectral norm `≤ r/4` are admissible.
pub trait MatrixFunction {
    fn domain_dim(&self) -> usize;
    fn codomain_dim(&self) -> usize;
    fn sample_radius(&self) -> f64;
    fn apply_to(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, HoloError>;
}

impl MatrixFunction for HoloFunction {
    fn domain_dim(&self) -> usize {
        self.m
    }
    fn codomain_dim(&self) -> usize {
        self.s
    }
    fn sample_radius(&self) -> f64 {
        self.radius
    }
    fn apply_to(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, HoloError> {
        self.check_shape(x)?;
        Ok(self.evaluate_unchecked(x))
    }
}

impl MatrixFunction for HomogeneousComponent {
    fn domain_dim(&self) -> usize {
        self.m
    }
    fn codomain_dim(&self) -> usize {
        self.s
    }
    fn sample_radius(&self) -> f64 {
        self.radius
    }
    fn apply_to(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, HoloError> {
        self.evaluate(x)
    }
}

impl MatrixFunction for LinearMapMatrix {
    fn domain_dim(&self) -> usize {
        self.m
    }
    fn codomain_dim(&self) -> usize {
        self.s
    }
    fn sample_radius(&self) -> f64 {
        4.0
    }
    fn apply_to(&self, x: &ComplexMatrix) -> Result<ComplexMatrix, HoloError> {
        if x.shape() != (self.m, self.m) {
            return Err(HoloError::ShapeMismatch {
                expected: (self.m, self.m),
                found: x.shape(),
            });
        }
        Ok(self.apply(x))
    }
}

/// `T` with `P(x) = T(xⁿ)`, built on the idempotent spanning set
/// `{E_ii} ∪ {E_ii + E_ij}`: `T(E_ii) = P(E_ii)` and
/// `T(E_ij) = P(E_ii + E_ij) − P(E_ii)`. The result is checked on a mixed
/// sample; a residual above `tol` means `P` is not of that form.
pub fn linearize(
    p: &HomogeneousComponent,
    model: &mut RandomModel,
    tol: f64,
) -> Result<LinearMapMatrix, HoloError> {
    let n = p.degree;
    if n == 0 {
        return Err(HoloError::DegreeZero);
    }
    let m = p.m;
    let mut diagonal = Vec::with_capacity(m);
    for i in 0..m {
        diagonal.push(p.evaluate(&ComplexMatrix::unit(m, i, i))?);
    }
    let mut images = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            if i == j {
                images.push(diagonal[i].clone());
            } else {
                let mut e = ComplexMatrix::unit(m, i, i);
                e[(i, j)] = Complex64::new(1.0, 0.0);
                images.push(&p.evaluate(&e)? - &diagonal[i]);
            }
        }
    }
    let t = LinearMapMatrix::new(m, p.s, images)?;

    let mut sample = idempotent_spanning_set(m);
    for k in 0..LINEARIZE_SAMPLE {
        let x = if k % 2 == 0 { model.hermitian(m) } else { model.ginibre(m, m) };
        sample.push(normalize_spectral(&x));
    }
    let mut worst: Option<(ComplexMatrix, f64)> = None;
    for x in sample {
        let px = p.evaluate(&x)?;
        let residual = t.apply(&x.pow(n)).distance(&px) / (1.0 + px.frobenius_norm());
        if worst.as_ref().is_none_or(|w| residual > w.1) {
            worst = Some((x, residual));
        }
    }
    match worst {
        Some((witness, residual)) if residual > tol => Err(HoloError::LinearizationMismatch {
            witness: Box::new(witness),
            residual,
        }),
        _ => Ok(t),
    }
}

/// The fixed probe set: `I`, `E_11` and random unit-norm matrices.
pub fn probe_set(m: usize) -> Vec<ComplexMatrix> {
    let mut model = RandomModel::new(PROBE_SEED);
    let mut probes = vec![ComplexMatrix::identity(m), ComplexMatrix::unit(m, 0, 0)];
    for k in 0..6 {
        let x = if k % 2 == 0 { model.ginibre(m, m) } else { model.hermitian(m) };
        probes.push(normalize_spectral(&x));
    }
    probes
}

/// Largest Frobenius norm of each extracted component `P₀..P_{n_max}` over
/// the probe set.
pub fn degree_norms(h: &HoloFunction, n_max: usize, nodes: usize) -> Result<Vec<f64>, HoloError> {
    let probes = probe_set(h.m);
    extract_all(h, n_max, nodes, ContourRadius::Adaptive)?
        .iter()
        .map(|p| {
            probes
                .iter()
                .map(|x| p.evaluate(x).map(|y| y.frobenius_norm()))
                .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
        })
        .collect()
}

/// Degrees `n ≤ n_max` whose component has probe sup-norm above `tol`.
pub fn estimate_degree_cutoff(h: &HoloFunction, n_max: usize, tol: f64) -> Result<Vec<usize>, HoloError> {
    let norms = degree_norms(h, n_max, default_nodes(n_max))?;
    Ok(norms
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > tol)
        .map(|(n, _)| n)
        .collect())
}
