//! Conditional expectations `E_a : End((a⊗m)_A) → End(m_A)` and operator-valued inner products.

use std::sync::Arc;

use category_core::linalg::{c, random_matrix};
use category_core::{Check, DMatrix, DVector, Label, Object, Report, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::module::vertex_coefficients;
use crate::{AlgebraError, AlgebraObject, ModuleBasis, ModuleHom, Result};

/// `E_a` as a matrix on module coordinates, together with the inclusion `ι_a = 1_a ⊗ ·`.
#[derive(Clone, Debug)]
pub struct Expectation {
    pub a: Label,
    pub m: Object,
    pub source: Arc<ModuleBasis>,
    pub target: Arc<ModuleBasis>,
    pub matrix: DMatrix<C64>,
}

impl Expectation {
    pub fn apply(&self, f: &ModuleHom) -> Result<ModuleHom> {
        if f.coords.len() != self.source.dim || f.source() != &self.source.source {
            return Err(AlgebraError::Shape("expectation applied outside its domain".into()));
        }
        Ok(ModuleHom { basis: self.target.clone(), coords: &self.matrix * &f.coords })
    }
}

impl AlgebraObject {
    /// `E_a(f) = d_a⁻¹ (ev_a ⊗ 1)(1_ā ⊗ f)(ev_a* ⊗ 1)`, so that `E_a(id) = id`.
    pub fn conditional_expectation(&self, a: Label, m: &Object) -> Expectation {
        let fd = self.fd().clone();
        let (am, lists) = fd.fuse_objects(&Object::simple(fd.rank(), a), m);
        let source = self.module_hom_space(&am, &am);
        let target = self.module_hom_space(m, m);
        let m_index = crate::module::summand_index(m);
        let am_summands = am.summands();
        let ab = fd.dual(a);
        let ida = fd.wm_identity(&fd.word1(ab));
        let cup = fd.wm_adjoint(&fd.wm_ev(a));
        let cap = fd.wm_ev(a);
        let mut matrix = DMatrix::zeros(target.dim, source.dim);
        for blk in &source.blocks {
            let ci = am_summands[blk.source];
            let cj = am_summands[blk.target];
            let fi = lists[ci.label][ci.copy];
            let fj = lists[cj.label][cj.copy];
            let (mk, ml) = (fi.right, fj.right);
            let s = blk.s;
            let vi = fd.wm_vertex(a, mk.label, ci.label, fi.vertex).scale(c(fd.dim(ci.label).sqrt()));
            let vj = fd.wm_vertex(a, ml.label, cj.label, fj.vertex).scale(c(fd.dim(cj.label).sqrt()));
            let mu = fd.wm_vertex(cj.label, s, ci.label, blk.mu);
            let ids = fd.wm_identity(&fd.word1(s));
            let idmk = fd.wm_identity(&fd.word1(mk.label));
            let idml = fd.wm_identity(&fd.word1(ml.label));
            let w1 = fd.wm_tensor(&cup, &idmk);
            let w2 = fd.wm_tensor(&ida, &fd.wm_adjoint(&vi));
            let w3 = fd.wm_tensor(&ida, &mu);
            let w4 = fd.wm_tensor(&ida, &fd.wm_tensor(&vj, &ids));
            let w5 = fd.wm_tensor(&cap, &fd.wm_tensor(&idml, &ids));
            let w = [w2, w3, w4, w5].iter().fold(w1, |acc, step| fd.wm_compose(step, &acc));
            let coeffs = vertex_coefficients(&fd, mk.label, ml.label, s, &w);
            let (k, l) = (m_index[&mk], m_index[&ml]);
            for (nu, z) in coeffs.into_iter().enumerate() {
                if z.norm() == 0.0 {
                    continue;
                }
                let tb = target.block(l, k, s, nu).expect("expectation block");
                for q in 0..blk.len {
                    matrix[(tb.offset + q, blk.offset + q)] += z / c(fd.dim(a));
                }
            }
        }
        Expectation { a, m: m.clone(), source, target, matrix }
    }

    /// `f ∈ A(a)` as the module morphism `a_A → 1_A` with coordinate `d_a^{1/2} f`.
    pub fn fiber_to_module(&self, a: Label, f: &DVector<C64>) -> ModuleHom {
        let fd = self.fd();
        let basis = self.module_hom_space(&Object::simple(fd.rank(), a), &Object::simple(fd.rank(), fd.unit()));
        let mut h = ModuleHom::zero(&basis);
        if let Some(b) = basis.block(0, 0, a, 0) {
            h.coords.rows_mut(b.offset, b.len).copy_from(&(f * c(fd.dim(a).sqrt())));
        }
        h
    }

    /// Right `A(1)`-valued inner product `⟨f|g⟩_a = d_a E_a(f* ∘ g)`.
    pub fn right_inner(&self, a: Label, f: &DVector<C64>, g: &DVector<C64>) -> Result<DVector<C64>> {
        let fd = self.fd();
        let fm = self.fiber_to_module(a, f);
        let gm = self.fiber_to_module(a, g);
        let p = self.module_compose(&self.module_adjoint(&fm)?, &gm)?;
        let e = self.conditional_expectation(a, &Object::simple(fd.rank(), fd.unit()));
        Ok(e.apply(&p)?.coords * c(fd.dim(a)))
    }

    /// Left `A(1)`-valued inner product `f ∘ g*`.
    pub fn left_inner(&self, a: Label, f: &DVector<C64>, g: &DVector<C64>) -> Result<DVector<C64>> {
        let fm = self.fiber_to_module(a, f);
        let gm = self.fiber_to_module(a, g);
        Ok(self.module_compose(&fm, &self.module_adjoint(&gm)?)?.coords)
    }

    /// Sampled Pimsner–Popa inequality `f ≤ d_a² ι(E_a(f))` and the norm bounds
    /// `d_a⁻² ‖f‖ ≤ ‖E_a(f)‖ ≤ ‖f‖` on random positive `f ∈ End((a⊗m)_A)`.
    ///
    /// `scale` multiplies `E_a`; it is 1 except when probing a deliberately misnormalized map.
    pub fn expectation_index_check(&self, a: Label, m: &Object, samples: usize, seed: u64, scale: f64) -> Result<IndexCheck> {
        let fd = self.fd().clone();
        let e = self.conditional_expectation(a, m);
        let big = self.endo_algebra(&e.source.source)?;
        let small = self.endo_algebra(m)?;
        let (rb, rs) = (big.algebra.faithful_rep(), small.algebra.faithful_rep());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d2 = fd.dim(a) * fd.dim(a);
        let mut pp_min = f64::INFINITY;
        let mut lower = f64::INFINITY;
        let mut upper = f64::NEG_INFINITY;
        for _ in 0..samples {
            let h = random_matrix(&mut rng, e.source.dim, 1).column(0).into_owned();
            let f = big.algebra.mul(&big.algebra.adjoint(&h), &h);
            let ef = &e.matrix * &f * c(scale);
            let lifted = self.module_tensor_left(&Object::simple(fd.rank(), a), &small.hom(&ef));
            let gap = lifted.coords * c(d2) - &f;
            pp_min = pp_min.min(rb.min_eigenvalue(&gap));
            let (nf, nef) = (rb.norm(&f), rs.norm(&ef));
            if nf > 0.0 {
                lower = lower.min(nef - nf / d2);
                upper = upper.max(nef - nf);
            }
        }
        let tol = 1e-8;
        let mut report = Report::default();
        report.push(Check::lower_bound("pimsner_popa", pp_min, tol));
        report.push(Check::lower_bound("norm_lower_bound", lower, tol));
        report.push(Check::lower_bound("norm_upper_bound", -upper, tol));
        Ok(IndexCheck { min_gap_eigenvalue: pp_min, lower_margin: lower, upper_margin: -upper, pass: report.pass(), report })
    }
}

#[derive(Clone, Debug)]
pub struct IndexCheck {
    /// Smallest eigenvalue of `d_a² ι(E_a(f)) − f` over the samples.
    pub min_gap_eigenvalue: f64,
    /// Smallest `‖E_a(f)‖ − d_a⁻² ‖f‖`.
    pub lower_margin: f64,
    /// Smallest `‖f‖ − ‖E_a(f)‖`.
    pub upper_margin: f64,
    pub pass: bool,
    pub report: Report,
}
