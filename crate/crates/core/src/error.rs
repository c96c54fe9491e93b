use thiserror::Error;

use crate::matrix::ComplexMatrix;
use crate::ortho::Verdict;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MatrixError {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("rows have differing lengths")]
    RaggedRows,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is numerically singular")]
    Singular,
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

#[derive(Debug, Clone, Error)]
pub enum HoloError {
    #[error("input has spectral norm {norm:e}, outside the ball of radius {radius:e}")]
    OutOfDomain { norm: f64, radius: f64 },
    #[error("polarization needs degree at least 1")]
    DegreeZero,
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("input is {found:?}, expected {expected:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("quadrature needs at least one node")]
    NoNodes,
    #[error("linearization mismatch: residual {residual:e} at witness")]
    LinearizationMismatch {
        witness: Box<ComplexMatrix>,
        residual: f64,
    },
    #[error("invalid function description: {0}")]
    Invalid(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Range flags reported alongside linear classifications.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct RangeFlags {
    pub nilpotent: bool,
    pub trace_zero: bool,
    pub trivial_multiplication: bool,
}

#[derive(Debug, Clone, Error)]
pub enum StructureError {
    #[error("orthogonal rank-one projections p, q with |θ(p)θ(q)| = {residual:e}")]
    HypothesisViolated {
        p: Box<ComplexMatrix>,
        q: Box<ComplexMatrix>,
        residual: f64,
    },
    #[error("map M_{m} -> M_{s} is outside the classifiable case ({flags:?})")]
    DimensionMismatch { m: usize, s: usize, flags: RangeFlags },
    #[error("reconstruction failed at {stage}: residual {residual:e}")]
    ReconstructionFailed { stage: &'static str, residual: f64 },
    #[error("anti-homomorphism test inconclusive (forward {forward:e}, backward {backward:e})")]
    Inconclusive { forward: f64, backward: f64 },
    #[error("not an automorphism at unit pair ({i},{j})·({k},{l}): residual {residual:e}")]
    NotAutomorphism {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        residual: f64,
    },
    #[error("recovered frame is numerically singular (condition {condition:e})")]
    SingularFrame { condition: f64 },
    #[error("hypothesis gate failed: {which}")]
    HypothesisFailed {
        which: &'static str,
        verdict: Box<Verdict>,
    },
    #[error("constant term does not vanish (norm {norm:e})")]
    NonzeroConstantTerm { norm: f64 },
    #[error("components of degrees {degrees:?} match neither the anchor form nor zero: {detail}")]
    MixedForm { degrees: Vec<usize>, detail: String },
    #[error(transparent)]
    Holo(#[from] HoloError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at byte {offset} (field `{path}`): {message}")]
    Parse {
        path: String,
        offset: usize,
        message: String,
    },
    #[error("invalid field `{field}`: {message}")]
    Invalid { field: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
