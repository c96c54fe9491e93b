//! Analysis of holomorphic functions between complex matrix algebras.
//!
//! The crate extracts homogeneous Taylor components of a matrix function,
//! tests orthogonal additivity, orthogonal multiplicativity and zero-product
//! preservation on sampled inputs, and classifies functions that pass those
//! tests: either the range is trace-free, or `H(x) = Σ λₙ S⁻¹xⁿS` (possibly
//! with `xᵗ` in place of `x`), in which case `λₙ` and `S` are recovered.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod error;
pub mod cli;
pub mod format;
pub mod gallery;
pub mod holo;
pub mod matrix;
pub mod ortho;
pub mod random;
pub mod spectral;
pub mod structure;

pub use error::{FormatError, HoloError, MatrixError};
pub use holo::{HoloFunction, HomogeneousComponent, LinearMapMatrix, StandardFormSpec};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use ortho::Verdict;
pub use random::RandomModel;
