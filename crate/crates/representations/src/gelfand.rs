//! The Gelfand–Naimark embedding `A → B(H)` of a C*-algebra object.

use category_core::linalg::random_vector;
use category_core::{Check, Object, Report};
use algebra_objects::AlgebraObject;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Gns, RepError, Result, State};

/// `H` is the GNS space of the regular trace of `A(1)`, a faithful state, so `λ` is injective.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub gns: Gns,
}

pub fn gelfand_naimark(a: &AlgebraObject) -> Result<Embedding> {
    let decision = a.is_cstar()?;
    if !decision.is_cstar {
        return Err(RepError::NotCStar(decision.witness_labels));
    }
    let state = State::regular_trace(a)?;
    if !state.is_faithful {
        return Err(RepError::Unsupported("the regular trace of A(1) is not faithful".into()));
    }
    Ok(Embedding { gns: Gns::new(&state)? })
}

/// Largest gap between C*-norms in `End(x_A)` and operator norms on `x⊗H`.
#[derive(Clone, Debug)]
pub struct IsometryCheck {
    pub max_gap: f64,
    pub max_norm: f64,
    pub report: Report,
}

impl Embedding {
    /// Compares `‖f‖` with `‖Φ(f)‖` on `samples` random `f ∈ End(x_A)`, plus `*`-compatibility.
    pub fn isometry_check(&self, x: &Object, samples: usize, seed: u64, tol: f64) -> Result<IsometryCheck> {
        let rep = &self.gns.left;
        let a = &rep.algebra;
        let end = a.endo_algebra(x)?;
        let faithful = end.algebra.faithful_rep();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gap = 0.0f64;
        let mut star = 0.0f64;
        let mut max_norm = 0.0f64;
        for _ in 0..samples {
            let v = random_vector(&mut rng, end.basis.dim);
            let f = end.hom(&v);
            let (_, _, img) = rep.realize(&f)?;
            let (_, _, img_star) = rep.realize(&a.module_adjoint(&f)?)?;
            let n_alg = faithful.norm(&v);
            gap = gap.max((n_alg - img.norm()).abs());
            star = star.max(img.adjoint().distance(&img_star));
            max_norm = max_norm.max(n_alg);
        }
        let mut report = Report::default();
        report.push(Check::new("isometric", gap, tol));
        report.push(Check::new("star_preserving", star, tol * max_norm.max(1.0)));
        Ok(IsometryCheck { max_gap: gap, max_norm, report })
    }
}
