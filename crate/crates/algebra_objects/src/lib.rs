//! Algebra objects in `Vec(C)` for a unitary fusion category `C`.
//!
//! An algebra object is a family of finite-dimensional fibers `A(s)` indexed by simples with a
//! multiplication tensor, a unit and optionally a star structure. Morphisms of the module
//! category `M_A` are elements of `⊕_s C(x, y⊗s) ⊗ A(s)`. The C*-property is decided on the
//! largest endomorphism algebra `End(Ω_A)` by positivity of its regular trace form.

mod algebra;
mod bh;
mod builders;
mod concrete;
mod endo;
mod expectation;
mod module;

pub use algebra::{AlgebraObject, MultKey};
pub use bh::{BhAlgebra, BhBlock};
pub use builders::{
    free_algebra, group_algebra, group_algebra_from_table, group_algebra_with, symmetric_enveloping, trivial_algebra,
    twisted_group_algebra,
};
pub use concrete::{CStarDecision, ConcreteStarAlgebra, FaithfulRep};
pub use endo::{CStarResult, EndoAlgebra};
pub use expectation::{Expectation, IndexCheck};
pub use module::{summand_index, vertex_coefficients, ModuleBasis, ModuleBlock, ModuleHom};

use category_core::CategoryError;
use graded_spaces::GradedError;

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("the algebra has no star structure")]
    MissingStar,
    #[error("axioms fail: {0}")]
    Invalid(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

/// `B(H)` as a bare algebra object.
pub fn endomorphism_algebra(h: &graded_spaces::GradedSpace) -> Result<AlgebraObject> {
    Ok(BhAlgebra::new(h)?.algebra)
}
