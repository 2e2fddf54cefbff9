//! Objects and morphisms of `Hilb(C)` as graded families of finite-dimensional Hilbert spaces.
//!
//! A [`GradedSpace`] assigns a fiber with a Gram matrix to every simple; a [`FiberMap`] is a
//! natural transformation, stored fiberwise. Tensor products carry the balanced inner product
//! and the associator is assembled from the recoupling blocks of the ambient category.

mod fibermap;
mod sandwich;
mod space;
mod tensor;

pub use fibermap::FiberMap;
pub use sandwich::{Sandwich, SandwichEntry};
pub use space::GradedSpace;
pub use tensor::{
    associator, creation, double_conjugate_iso, left_unitor, right_unitor, tensor, tensor_maps, TensorEntry, TensorIndex,
};

use category_core::CategoryError;

#[derive(Debug, thiserror::Error)]
pub enum GradedError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid Gram matrix: {0}")]
    Gram(String),
    #[error("spaces live over different categories")]
    Ambient,
    #[error(transparent)]
    Category(#[from] CategoryError),
}

pub type Result<T> = std::result::Result<T, GradedError>;
