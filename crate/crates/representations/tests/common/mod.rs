#![allow(dead_code)]

use std::sync::Arc;

use algebra_objects::*;
use category_core::{DVector, FusionData, C64};
use graded_spaces::GradedSpace;
use representations::State;

pub fn fib() -> Arc<FusionData> {
    Arc::new(FusionData::fibonacci())
}

pub fn phi() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

pub fn m2() -> AlgebraObject {
    free_algebra(Arc::new(FusionData::trivial()), &ConcreteStarAlgebra::matrix_algebra(2)).unwrap()
}

pub fn cz(n: usize) -> AlgebraObject {
    group_algebra(Arc::new(FusionData::cyclic(n))).unwrap()
}

/// `B(1 ⊕ τ)` over Fibonacci.
pub fn fib_bh() -> BhAlgebra {
    BhAlgebra::new(&GradedSpace::with_dims(fib(), &[1, 1])).unwrap()
}

/// The state `τ(p_c) = d_c / (1 + d_τ)` on `B(1 ⊕ τ)(1)`, where `p_c` has coordinate `d_c^{-1/2}`.
pub fn fib_bh_quantum_trace(a: &AlgebraObject) -> State {
    let d = phi();
    let total = 1.0 + d;
    let f = DVector::from_vec(vec![C64::new(1.0 / total, 0.0), C64::new(d * d.sqrt() / total, 0.0)]);
    State::new(a, f).unwrap()
}
