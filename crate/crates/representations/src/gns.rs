//! The GNS construction for a state on an algebra object.

use category_core::linalg::{c, herm_eig};
use category_core::{DMatrix, DVector, Label, Object, C64};
use algebra_objects::BhAlgebra;
use graded_spaces::{FiberMap, GradedSpace, Sandwich};

use crate::representation::unit_vector;
use crate::{RepError, Representation, Result, State};

/// `L²(A)_φ` with its left and right actions and the cyclic vector.
///
/// Fibers carry orthonormal coordinates: `lift[a]` maps them to representatives in `A(a)` and
/// `proj[a]` sends `A(a)` to the class of each element.
#[derive(Clone, Debug)]
pub struct Gns {
    pub state: State,
    pub l2: GradedSpace,
    pub proj: Vec<DMatrix<C64>>,
    pub lift: Vec<DMatrix<C64>>,
    pub left: Representation,
    pub omega: FiberMap,
}

impl Gns {
    /// Builds the separated quotient with cutoff `√tol` on the Gram eigenvalues.
    pub fn new(state: &State) -> Result<Gns> {
        if !state.is_state {
            return Err(RepError::NotAState);
        }
        let a = &state.algebra;
        let fd = a.fd().clone();
        let cutoff = fd.tolerance().sqrt();
        let mut proj = Vec::with_capacity(fd.rank());
        let mut lift = Vec::with_capacity(fd.rank());
        let mut dims = Vec::with_capacity(fd.rank());
        for s in 0..fd.rank() {
            let n = a.dim(s);
            if n == 0 {
                proj.push(DMatrix::zeros(0, 0));
                lift.push(DMatrix::zeros(0, 0));
                dims.push(0);
                continue;
            }
            let g = state.right_gram(s)?;
            let (vals, vecs) = herm_eig(&((&g + g.adjoint()) * c(0.5)));
            let keep: Vec<usize> = (0..n).filter(|&k| vals[k] >= cutoff).collect();
            let p = DMatrix::from_fn(keep.len(), n, |r, k| vecs[(k, keep[r])].conj() * vals[keep[r]].sqrt());
            let l = DMatrix::from_fn(n, keep.len(), |k, r| vecs[(k, keep[r])] / vals[keep[r]].sqrt());
            dims.push(keep.len());
            proj.push(p);
            lift.push(l);
        }
        let l2 = GradedSpace::with_dims(fd.clone(), &dims);
        let bh = BhAlgebra::new(&l2)?;
        let mut maps = Vec::with_capacity(fd.rank());
        for s in 0..fd.rank() {
            let mut m = DMatrix::zeros(bh.algebra.dim(s), a.dim(s));
            for k in 0..a.dim(s) {
                let x = unit_vector(a.dim(s), k);
                for blk in &bh.blocks[s] {
                    let (cc, b, alpha) = (blk.c, blk.t, blk.alpha);
                    let nb = dims[b];
                    for q in 0..nb {
                        let col = lift[b].column(q).into_owned();
                        let img = &proj[cc] * a.product(s, b, cc, alpha, &x, &col);
                        for p in 0..dims[cc] {
                            m[(blk.offset + p * nb + q, k)] = img[p];
                        }
                    }
                }
            }
            maps.push(m);
        }
        let left = Representation::new(a, bh, maps)?;
        let one = fd.unit();
        let unit_space = GradedSpace::yoneda(fd.clone(), &Object::simple(fd.rank(), one));
        let mut omega = FiberMap::zero(&unit_space, &l2);
        omega.blocks[one] = DMatrix::from_column_slice(dims[one], 1, (&proj[one] * a.unit()).as_slice());
        Ok(Gns { state: state.clone(), l2, proj, lift, left, omega })
    }

    /// Class of `f ∈ A(a)` in `L²(a)`.
    pub fn class(&self, a: Label, f: &DVector<C64>) -> DVector<C64> {
        &self.proj[a] * f
    }

    /// Block `(g, t, β)` of the right action of `y ∈ A(s)`: `[ξ] ↦ [μ^g_β(ξ, y)]`, `β ∈ C(g, t⊗s)`.
    pub fn right_block(&self, s: Label, y: &DVector<C64>, g: Label, t: Label, beta: usize) -> Option<DMatrix<C64>> {
        let a = &self.state.algebra;
        let fd = a.fd();
        if beta >= fd.n(t, s, g) || self.l2.dim(g) == 0 || self.l2.dim(t) == 0 {
            return None;
        }
        let mut m = DMatrix::zeros(self.l2.dim(g), self.l2.dim(t));
        for q in 0..self.l2.dim(t) {
            let col = self.lift[t].column(q).into_owned();
            m.set_column(q, &(&self.proj[g] * a.product(t, s, g, beta, &col, y)));
        }
        Some(m)
    }

    /// `1_X ⊗ ρ(y) : S(X, L², s) → S(X, L², ∅)` for `y ∈ A(s)`.
    pub fn right_action(&self, s: Label, y: &DVector<C64>, left: &[Label]) -> Result<(Sandwich, Sandwich, FiberMap)> {
        let src = Sandwich::new(&self.l2, left, &[s]);
        let tgt = Sandwich::new(&self.l2, left, &[]);
        let f = Sandwich::vertex_action(&src, &tgt, s, false, &|g, t, beta| self.right_block(s, y, g, t, beta))?;
        Ok((src, tgt, f))
    }
}
