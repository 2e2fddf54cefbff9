//! Skeletal unitary fusion categories.
//!
//! A category is given by its simple labels, fusion multiplicities, dimensions,
//! the recoupling matrices between left- and right-nested trivalent trees and
//! the duality scalars. Every morphism space `C(c, a⊗b)` carries a fixed basis
//! that is orthonormal for the trace inner product, i.e. `α*β = δ_{αβ} d_c⁻¹ id_c`.
//! Vertices with a unit leg are fixed to `d_c^{-1/2} id_c`.

pub mod conjugation;
pub mod diagram;
pub mod fusion;
pub mod hom;
pub mod linalg;
pub mod product;
pub mod report;
pub mod rules;
pub mod validate;

pub use diagram::{Tree, TreeSpace, Word, WordMorphism};
pub use fusion::{Channel, DualityData, FusionData, FusionInput, Label, Recoupling, RecouplingInput};
pub use hom::{HomElement, Object, Summand};
pub use report::{Check, Report, Witness};
pub use rules::FusionRules;

pub use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64 as C64;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum CategoryError {
    #[error("structural error: {0}")]
    Structure(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("incompatible morphisms: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, CategoryError>;
