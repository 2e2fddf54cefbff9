//! Multipliers between algebra objects: positivity, amplification, dilation.
//!
//! A multiplier `θ : A ⇒ B` is a family of linear maps `θ_s : A(s) → B(s)`, one per simple.
//! Complete positivity is decided exactly on a single module endomorphism algebra, see
//! [`is_ucp`]. The quantum-group criterion, the Schur-product lemma and the analytic
//! classification of multipliers on connected algebras live in their own modules.

mod amplify;
mod analytic;
mod dilation;
mod multiplier;
mod positivity;
mod quantum;
mod schur;

pub use amplify::{amplify, fiber_component, Amplification};
pub use analytic::{classify_multiplier, convergence_probe, Classification, ProbeReport, Truncation};
pub use dilation::{ad, stinespring, Dilation};
pub use multiplier::Multiplier;
pub use positivity::{is_ucp, universal_object, UcpResult};
pub use quantum::{qg_state_check, qg_state_check_with, FiberFunctor, QGMultiplier, QgCertificate};
pub use schur::{schur_criterion, SchurResult};

use algebra_objects::AlgebraError;
use category_core::{Label, C64};
use graded_spaces::GradedError;
use representations::RepError;

#[derive(Debug, thiserror::Error)]
pub enum CpError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("source and target live over different categories")]
    Ambient,
    /// The Stinespring form has a negative direction at fiber `label`.
    #[error("the map is not completely positive: form eigenvalue {eigenvalue:.3e} at fiber {label}")]
    NotPositive { label: Label, eigenvalue: f64, witness: Vec<C64> },
    #[error("the map is not unital (residual {0:.3e})")]
    NotUnital(f64),
    #[error("the cutoff set is empty")]
    EmptyCutoff,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

pub type Result<T> = std::result::Result<T, CpError>;
