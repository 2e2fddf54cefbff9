//! Representations of algebra objects on graded Hilbert spaces.
//!
//! A representation is an algebra map `A → B(H)`. From it one gets operators on the
//! sandwiched spaces `X⊗H⊗Y`, which is where commutants, bicommutants and modular
//! conjugation are computed.

mod commutant;
mod gelfand;
mod gns;
mod modular;
mod representation;
mod state;

pub use commutant::{
    all_generators, bicommutant_check, bicommutant_check_with, commutant, commutant_of, commutant_report, extension_matrix,
    residual_outside, BicommutantReport, CommutantResult, Generators, HomSolution,
};
pub use gelfand::{gelfand_naimark, Embedding, IsometryCheck};
pub use gns::Gns;
pub use modular::{modular_conjugation, ModularResult};
pub use representation::{bh_block, bh_from_action, ObjectSpace, Representation};
pub use state::State;

use algebra_objects::AlgebraError;
use category_core::Label;
use graded_spaces::GradedError;

#[derive(Debug, thiserror::Error)]
pub enum RepError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("the functional is not a state")]
    NotAState,
    #[error("the state is not a trace")]
    NotATrace,
    #[error("the algebra is not C*; negative directions on labels {0:?}")]
    NotCStar(Vec<Label>),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

pub type Result<T> = std::result::Result<T, RepError>;
