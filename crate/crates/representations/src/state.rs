//! States on algebra objects, determined by a functional on `A(1)`.

use category_core::linalg::{c, herm_eig, max_abs};
use category_core::{DMatrix, DVector, Label, C64};
use algebra_objects::AlgebraObject;

use crate::representation::unit_vector;
use crate::{RepError, Result};

#[derive(Clone, Debug)]
pub struct State {
    pub algebra: AlgebraObject,
    /// `φ(x) = Σ_k functional[k] x[k]` on `A(1)`.
    pub functional: DVector<C64>,
    pub is_state: bool,
    pub is_trace: bool,
    pub is_faithful: bool,
}

impl State {
    /// Wraps a functional and decides the state, trace and faithfulness flags.
    pub fn new(algebra: &AlgebraObject, functional: DVector<C64>) -> Result<State> {
        let fd = algebra.fd();
        let one = fd.unit();
        if functional.len() != algebra.dim(one) {
            return Err(RepError::Shape("functional length differs from dim A(1)".into()));
        }
        if !algebra.has_star() {
            return Err(RepError::Algebra(algebra_objects::AlgebraError::MissingStar));
        }
        let mut st = State { algebra: algebra.clone(), functional, is_state: false, is_trace: false, is_faithful: false };
        let tol = fd.tolerance();
        let q = st.positivity_form()?;
        let herm = if q.is_empty() { 0.0 } else { max_abs(&(&q - q.adjoint())) };
        let (vals, _) = herm_eig(&((&q + q.adjoint()) * c(0.5)));
        let min = vals.first().copied().unwrap_or(0.0);
        let scale = max_abs(&q).max(1.0);
        let unital = (st.eval(algebra.unit()) - c(1.0)).norm() <= tol;
        st.is_state = unital && herm <= tol * scale && min >= -tol * scale;
        st.is_faithful = st.is_state && min > tol.sqrt() * scale;
        st.is_trace = st.is_state && st.trace_residual()? <= tol * scale;
        Ok(st)
    }

    /// Normalized trace of the left regular representation of `A(1)`.
    pub fn regular_trace(algebra: &AlgebraObject) -> Result<State> {
        let one = algebra.fd().unit();
        let n = algebra.dim(one);
        let m = algebra.mult(one, one, one, 0);
        let lm = |x: &DVector<C64>| DMatrix::from_fn(n, n, |r, k| (&m * x.kronecker(&unit_vector(n, k)))[r]);
        let total = lm(algebra.unit()).trace();
        let functional = DVector::from_fn(n, |k, _| lm(&unit_vector(n, k)).trace() / total);
        State::new(algebra, functional)
    }

    /// The unique state of a connected algebra, `φ(i) = 1`.
    pub fn connected(algebra: &AlgebraObject) -> Result<State> {
        if !algebra.is_connected() {
            return Err(RepError::Unsupported("the algebra is not connected".into()));
        }
        State::new(algebra, DVector::from_element(1, c(1.0) / algebra.unit()[0]))
    }

    pub fn eval(&self, x: &DVector<C64>) -> C64 {
        self.functional.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
    }

    /// `Q[k, l] = φ(e_k* e_l)` on `A(1)`.
    pub fn positivity_form(&self) -> Result<DMatrix<C64>> {
        let a = &self.algebra;
        let one = a.fd().unit();
        let n = a.dim(one);
        let mut q = DMatrix::zeros(n, n);
        for k in 0..n {
            let ek = a.star(one, &unit_vector(n, k))?;
            for l in 0..n {
                q[(k, l)] = self.eval(&a.product(one, one, one, 0, &ek, &unit_vector(n, l)));
            }
        }
        Ok(q)
    }

    /// Gram of the right GNS space at `a`: `G[k, l] = φ(⟨e_k | e_l⟩_a)`.
    pub fn right_gram(&self, a: Label) -> Result<DMatrix<C64>> {
        let n = self.algebra.dim(a);
        let mut g = DMatrix::zeros(n, n);
        for k in 0..n {
            for l in 0..n {
                g[(k, l)] = self.eval(&self.algebra.right_inner(a, &unit_vector(n, k), &unit_vector(n, l))?);
            }
        }
        Ok(g)
    }

    /// Gram of the left GNS space at `a`: `G[k, l] = φ(_a⟨e_l, e_k⟩)`.
    pub fn left_gram(&self, a: Label) -> Result<DMatrix<C64>> {
        let n = self.algebra.dim(a);
        let mut g = DMatrix::zeros(n, n);
        for k in 0..n {
            for l in 0..n {
                g[(k, l)] = self.eval(&self.algebra.left_inner(a, &unit_vector(n, l), &unit_vector(n, k))?);
            }
        }
        Ok(g)
    }

    /// Largest fiberwise difference of the left and right Grams; zero exactly for traces.
    pub fn trace_residual(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for a in self.algebra.support() {
            let d = self.right_gram(a)? - self.left_gram(a)?;
            worst = worst.max(max_abs(&d));
        }
        Ok(worst)
    }
}
