//! Antilinear vertex conjugations built from cups and caps.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::diagram::WordMorphism;
use crate::fusion::{FusionData, Label};

impl FusionData {
    fn id1(&self, a: Label) -> WordMorphism {
        self.wm_identity(&self.word1(a))
    }

    fn idw(&self, letters: &[Label]) -> WordMorphism {
        self.wm_identity(&self.word(letters))
    }

    /// `K(α) = (ev_c⊗1)(1⊗α*⊗1)(1⊗1⊗coev_b⊗1)(1⊗coev_a) ∈ C(c̄, b̄⊗ā)` for the basis vertex `α ∈ C(c, a⊗b)`.
    pub fn conjugate_vertex_morphism(&self, a: Label, b: Label, c: Label, mu: usize) -> WordMorphism {
        let (ab, bb, cb) = (self.dual(a), self.dual(b), self.dual(c));
        let s1 = self.wm_tensor(&self.id1(cb), &self.wm_coev(a));
        let s2 = self.wm_tensor(&self.idw(&[cb, a]), &self.wm_tensor(&self.wm_coev(b), &self.id1(ab)));
        let alpha_adj = self.wm_adjoint(&self.wm_vertex(a, b, c, mu));
        let s3 = self.wm_tensor(&self.id1(cb), &self.wm_tensor(&alpha_adj, &self.idw(&[bb, ab])));
        let s4 = self.wm_tensor(&self.wm_ev(c), &self.idw(&[bb, ab]));
        self.wm_compose(&s4, &self.wm_compose(&s3, &self.wm_compose(&s2, &s1)))
    }

    /// Matrix `K_{βα}` with `K(α) = Σ_β K_{βα} β`, `β ∈ C(c̄, b̄⊗ā)`; `K` itself is antilinear.
    pub fn vertex_conjugation(&self, a: Label, b: Label, c: Label) -> DMatrix<C64> {
        self.cached_vertex_map((false, a, b, c), || self.compute_conjugation(a, b, c))
    }

    fn cached_vertex_map(&self, key: (bool, Label, Label, Label), f: impl FnOnce() -> DMatrix<C64>) -> DMatrix<C64> {
        if let Some(m) = self.cache.vertex_maps.lock().unwrap().get(&key) {
            return (**m).clone();
        }
        let m = f();
        self.cache.vertex_maps.lock().unwrap().insert(key, std::sync::Arc::new(m.clone()));
        m
    }

    fn compute_conjugation(&self, a: Label, b: Label, c: Label) -> DMatrix<C64> {
        let (ab, bb, cb) = (self.dual(a), self.dual(b), self.dual(c));
        let n = self.n(a, b, c);
        let m = self.n(bb, ab, cb);
        DMatrix::from_fn(m, n, |beta, alpha| {
            let k = self.conjugate_vertex_morphism(a, b, c, alpha);
            let bv = self.wm_adjoint(&self.wm_vertex(bb, ab, cb, beta));
            self.wm_scalar(&self.wm_compose(&bv, &k)) * self.dim(cb)
        })
    }

    /// `R(α) = (α*⊗1_t̄)(1_b⊗coev_t) ∈ C(b, a⊗t̄)` for the basis vertex `α ∈ C(a, b⊗t)`.
    pub fn bend_vertex_morphism(&self, a: Label, b: Label, t: Label, mu: usize) -> WordMorphism {
        let tb = self.dual(t);
        let s1 = self.wm_tensor(&self.id1(b), &self.wm_coev(t));
        let s2 = self.wm_tensor(&self.wm_adjoint(&self.wm_vertex(b, t, a, mu)), &self.id1(tb));
        self.wm_compose(&s2, &s1)
    }

    /// Matrix `R_{βα}` with `R(α) = Σ_β R_{βα} β`, `α ∈ C(a, b⊗t)`, `β ∈ C(b, a⊗t̄)`.
    pub fn vertex_bend(&self, a: Label, b: Label, t: Label) -> DMatrix<C64> {
        self.cached_vertex_map((true, a, b, t), || self.compute_bend(a, b, t))
    }

    fn compute_bend(&self, a: Label, b: Label, t: Label) -> DMatrix<C64> {
        let tb = self.dual(t);
        let n = self.n(b, t, a);
        let m = self.n(a, tb, b);
        DMatrix::from_fn(m, n, |beta, alpha| {
            let r = self.bend_vertex_morphism(a, b, t, alpha);
            let bv = self.wm_adjoint(&self.wm_vertex(a, tb, b, beta));
            self.wm_scalar(&self.wm_compose(&bv, &r)) * self.dim(b)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn conjugation_is_isometric_on_fibonacci() {
        let fd = FusionData::fibonacci();
        for a in fd.labels() {
            for b in fd.labels() {
                for c in fd.fuse(a, b) {
                    let k = fd.vertex_conjugation(a, b, c);
                    let n = k.ncols();
                    assert!(max_abs(&(k.adjoint() * &k - DMatrix::identity(n, n))) < 1e-12, "{a}{b}{c}");
                }
            }
        }
    }
}
