//! Natural transformations `θ : A ⇒ B`, stored as one matrix per simple.

use std::sync::{Arc, OnceLock};

use algebra_objects::{AlgebraObject, BhAlgebra};
use category_core::linalg::{c, max_abs, max_abs_vec, op_norm};
use category_core::{DMatrix, DVector, Label, C64};
use graded_spaces::GradedSpace;
use representations::{Representation, State};

use crate::{is_ucp, CpError, Result, UcpResult};

#[derive(Clone, Debug)]
pub struct Multiplier {
    pub source: AlgebraObject,
    pub target: AlgebraObject,
    /// `maps[s] : A(s) → B(s)` in fiber coordinates.
    pub maps: Vec<DMatrix<C64>>,
    support: Vec<Label>,
    norms: Vec<f64>,
    target_rep: Option<Arc<Representation>>,
    ucp: OnceLock<UcpResult>,
}

impl Multiplier {
    pub fn new(source: &AlgebraObject, target: &AlgebraObject, maps: Vec<DMatrix<C64>>) -> Result<Self> {
        if !Arc::ptr_eq(source.fd(), target.fd()) {
            return Err(CpError::Ambient);
        }
        if maps.len() != source.fd().rank() {
            return Err(CpError::Shape("one map per label expected".into()));
        }
        for (s, m) in maps.iter().enumerate() {
            if m.nrows() != target.dim(s) || m.ncols() != source.dim(s) {
                return Err(CpError::Shape(format!(
                    "map on fiber {s} is {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    target.dim(s),
                    source.dim(s)
                )));
            }
        }
        let norms: Vec<f64> = maps.iter().map(|m| if m.is_empty() { 0.0 } else { op_norm(m) }).collect();
        let support = (0..maps.len()).filter(|&s| !maps[s].is_empty() && max_abs(&maps[s]) > 0.0).collect();
        Ok(Multiplier { source: source.clone(), target: target.clone(), maps, support, norms, target_rep: None, ucp: OnceLock::new() })
    }

    /// Records a faithful representation of the target, used by [`is_ucp`] in place of the
    /// Gelfand–Naimark representation.
    pub fn with_target_representation(mut self, rep: Representation) -> Result<Self> {
        if rep.algebra.dims() != self.target.dims() || !Arc::ptr_eq(rep.algebra.fd(), self.target.fd()) {
            return Err(CpError::Shape("the representation is not of the target algebra".into()));
        }
        self.target_rep = Some(Arc::new(rep));
        self.ucp = OnceLock::new();
        Ok(self)
    }

    pub fn target_representation(&self) -> Option<&Representation> {
        self.target_rep.as_deref()
    }

    pub fn identity(a: &AlgebraObject) -> Self {
        let maps = a.dims().iter().map(|&n| DMatrix::identity(n, n)).collect();
        Self::new(a, a, maps).expect("identity shapes")
    }

    /// `θ_s = factors[s] · id` on `A(s)`.
    pub fn scaling(a: &AlgebraObject, factors: &[C64]) -> Result<Self> {
        if factors.len() != a.fd().rank() {
            return Err(CpError::Shape("one factor per label expected".into()));
        }
        let maps = a.dims().iter().zip(factors).map(|(&n, &z)| DMatrix::identity(n, n) * z).collect();
        Self::new(a, a, maps)
    }

    /// `π : A → B(H)` as a multiplier into `B(H)`.
    pub fn from_representation(rep: &Representation) -> Result<Self> {
        Self::new(&rep.algebra, &rep.bh.algebra, rep.maps.clone())?.with_target_representation(Representation::identity(&rep.bh))
    }

    /// A state `φ` as the map `A ⇒ B(1)`, together with `B(1)`.
    pub fn from_state(state: &State) -> Result<(Self, BhAlgebra)> {
        let a = &state.algebra;
        let fd = a.fd().clone();
        let bh = BhAlgebra::new(&GradedSpace::unit(fd.clone()))?;
        let one = fd.unit();
        let maps = (0..fd.rank())
            .map(|s| {
                if s == one {
                    DMatrix::from_row_slice(1, a.dim(s), state.functional.as_slice())
                } else {
                    DMatrix::zeros(bh.algebra.dim(s), a.dim(s))
                }
            })
            .collect();
        let m = Self::new(a, &bh.algebra, maps)?.with_target_representation(Representation::identity(&bh))?;
        Ok((m, bh))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Multiplier) -> Result<Multiplier> {
        if self.source.dims() != first.target.dims() {
            return Err(CpError::Shape("composing multipliers through different algebras".into()));
        }
        let maps = self.maps.iter().zip(&first.maps).map(|(a, b)| a * b).collect();
        let out = Self::new(&first.source, &self.target, maps)?;
        match &self.target_rep {
            Some(rep) => out.with_target_representation((**rep).clone()),
            None => Ok(out),
        }
    }

    pub fn apply(&self, s: Label, x: &DVector<C64>) -> DVector<C64> {
        &self.maps[s] * x
    }

    /// Labels on which `θ_s ≠ 0`.
    pub fn support(&self) -> &[Label] {
        &self.support
    }

    /// Operator norm of `θ_s` in the fiber coordinates.
    pub fn norm(&self, s: Label) -> f64 {
        self.norms[s]
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// `‖θ_1(i_A) − i_B‖`.
    pub fn unit_residual(&self) -> f64 {
        let one = self.source.fd().unit();
        max_abs_vec(&(self.apply(one, self.source.unit()) - self.target.unit()))
    }

    /// Largest `‖θ(j x) − j(θ x)‖` over basis vectors.
    pub fn star_residual(&self) -> Result<f64> {
        let fd = self.source.fd();
        let mut worst = 0.0f64;
        for s in 0..fd.rank() {
            for k in 0..self.source.dim(s) {
                let mut x = DVector::zeros(self.source.dim(s));
                x[k] = c(1.0);
                let lhs = self.apply(fd.dual(s), &self.source.star(s, &x)?);
                let rhs = self.target.star(s, &self.apply(s, &x))?;
                worst = worst.max(max_abs_vec(&(lhs - rhs)));
            }
        }
        Ok(worst)
    }

    /// Cached result of [`is_ucp`].
    pub fn ucp(&self) -> Result<&UcpResult> {
        if let Some(r) = self.ucp.get() {
            return Ok(r);
        }
        let r = is_ucp(self)?;
        Ok(self.ucp.get_or_init(|| r))
    }
}
