#![allow(dead_code)]

use std::sync::Arc;

use algebra_objects::*;
use category_core::linalg::c;
use category_core::{FusionData, C64};
use cp_multipliers::Multiplier;
use graded_spaces::GradedSpace;
use representations::{Gns, State};

pub fn fib() -> Arc<FusionData> {
    Arc::new(FusionData::fibonacci())
}

pub fn cz(n: usize) -> AlgebraObject {
    group_algebra(Arc::new(FusionData::cyclic(n))).unwrap()
}

pub fn fib_bh() -> BhAlgebra {
    BhAlgebra::new(&GradedSpace::with_dims(fib(), &[1, 1])).unwrap()
}

/// `θ = (1, t)` on `C[Z/2]`.
pub fn z2_scaling(a: &AlgebraObject, t: f64) -> Multiplier {
    Multiplier::scaling(a, &[c(1.0), c(t)]).unwrap()
}

/// `θ` composed with the left regular representation of `C[Z/2]` on its `L²`.
pub fn z2_into_l2(t: f64) -> (Multiplier, BhAlgebra) {
    let a = cz(2);
    let g = Gns::new(&State::regular_trace(&a).unwrap()).unwrap();
    let lambda = Multiplier::from_representation(&g.left).unwrap();
    let theta = lambda.compose(&z2_scaling(&a, t)).unwrap();
    (theta, g.left.bh.clone())
}

pub fn re(x: f64) -> C64 {
    c(x)
}
