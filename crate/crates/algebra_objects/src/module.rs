//! The category `M_A` of free right `A`-modules.
//!
//! For simples `x`, `y` a morphism `x_A → y_A` is an element of `⊕_s C(x, y⊗s) ⊗ A(s)`,
//! written `Σ μ ⊗ f_μ` over basis vertices `μ ∈ C(x, y⊗s)`. Morphisms between direct sums
//! are matrices of such blocks, indexed by the summands of target and source.

use std::collections::HashMap;
use std::sync::Arc;

use category_core::linalg::c;
use category_core::{Channel, DVector, FusionData, HomElement, Label, Object, Summand, WordMorphism, C64};

use crate::{AlgebraError, AlgebraObject, Result};

/// Coefficient block of a module morphism: `μ ∈ C(x_source, y_target ⊗ s)` tensored with `A(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModuleBlock {
    pub target: usize,
    pub source: usize,
    pub s: Label,
    pub mu: usize,
    pub offset: usize,
    pub len: usize,
}

/// Coordinates of `M_A(x, y)`.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    pub source: Object,
    pub target: Object,
    pub source_summands: Vec<Summand>,
    pub target_summands: Vec<Summand>,
    pub blocks: Vec<ModuleBlock>,
    index: HashMap<(usize, usize, Label, usize), usize>,
    pub dim: usize,
}

impl ModuleBasis {
    pub fn new(a: &AlgebraObject, source: &Object, target: &Object) -> Self {
        let fd = a.fd();
        let source_summands = source.summands();
        let target_summands = target.summands();
        let mut blocks = Vec::new();
        let mut index = HashMap::new();
        let mut offset = 0;
        for (j, y) in target_summands.iter().enumerate() {
            for (i, x) in source_summands.iter().enumerate() {
                for s in a.support() {
                    for mu in 0..fd.n(y.label, s, x.label) {
                        let len = a.dim(s);
                        index.insert((j, i, s, mu), blocks.len());
                        blocks.push(ModuleBlock { target: j, source: i, s, mu, offset, len });
                        offset += len;
                    }
                }
            }
        }
        ModuleBasis { source: source.clone(), target: target.clone(), source_summands, target_summands, blocks, index, dim: offset }
    }

    pub fn block(&self, target: usize, source: usize, s: Label, mu: usize) -> Option<&ModuleBlock> {
        self.index.get(&(target, source, s, mu)).map(|&k| &self.blocks[k])
    }

    /// Block and position inside it of a flat coordinate.
    pub fn locate(&self, k: usize) -> (&ModuleBlock, usize) {
        let b = self.blocks.iter().find(|b| k >= b.offset && k < b.offset + b.len).expect("coordinate in range");
        (b, k - b.offset)
    }

    fn same_shape(&self, other: &ModuleBasis) -> bool {
        self.source == other.source && self.target == other.target && self.dim == other.dim
    }
}

#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub basis: Arc<ModuleBasis>,
    pub coords: DVector<C64>,
}

impl ModuleHom {
    pub fn zero(basis: &Arc<ModuleBasis>) -> Self {
        ModuleHom { basis: basis.clone(), coords: DVector::zeros(basis.dim) }
    }

    pub fn from_coords(basis: &Arc<ModuleBasis>, coords: DVector<C64>) -> Result<Self> {
        if coords.len() != basis.dim {
            return Err(AlgebraError::Shape(format!("{} coordinates for a space of dimension {}", coords.len(), basis.dim)));
        }
        Ok(ModuleHom { basis: basis.clone(), coords })
    }

    pub fn source(&self) -> &Object {
        &self.basis.source
    }

    pub fn target(&self) -> &Object {
        &self.basis.target
    }

    /// The `A(s)` component along a block.
    pub fn component(&self, b: &ModuleBlock) -> DVector<C64> {
        self.coords.rows(b.offset, b.len).into_owned()
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if !self.basis.same_shape(&other.basis) {
            return Err(AlgebraError::Shape("adding module morphisms with different endpoints".into()));
        }
        Ok(ModuleHom { basis: self.basis.clone(), coords: &self.coords + &other.coords })
    }

    pub fn scale(&self, z: C64) -> ModuleHom {
        ModuleHom { basis: self.basis.clone(), coords: &self.coords * z }
    }

    pub fn max_abs(&self) -> f64 {
        category_core::linalg::max_abs_vec(&self.coords)
    }
}

impl AlgebraObject {
    /// Coordinates of `M_A(x, y)`; its dimension is `Σ_s dim A(s) · dim C(x, y⊗s)`.
    pub fn module_hom_space(&self, x: &Object, y: &Object) -> Arc<ModuleBasis> {
        Arc::new(ModuleBasis::new(self, x, y))
    }

    /// `id_x ⊗ i`.
    pub fn module_identity(&self, x: &Object) -> ModuleHom {
        let basis = self.module_hom_space(x, x);
        let fd = self.fd();
        let mut out = ModuleHom::zero(&basis);
        for (i, sm) in basis.source_summands.iter().enumerate() {
            if let Some(b) = basis.block(i, i, fd.unit(), 0) {
                let v = self.unit() * c(fd.dim(sm.label).sqrt());
                out.coords.rows_mut(b.offset, b.len).copy_from(&v);
            }
        }
        out
    }

    /// A morphism `ψ : x → y` of `C`, as the module morphism `ψ ⊗ i`.
    pub fn module_from_morphism(&self, psi: &HomElement) -> ModuleHom {
        let basis = self.module_hom_space(&psi.source, &psi.target);
        let fd = self.fd();
        let mut out = ModuleHom::zero(&basis);
        for (j, y) in basis.target_summands.iter().enumerate() {
            for (i, x) in basis.source_summands.iter().enumerate() {
                if x.label != y.label {
                    continue;
                }
                let z = psi.blocks[x.label][(y.copy, x.copy)];
                if let Some(b) = basis.block(j, i, fd.unit(), 0) {
                    let v = self.unit() * (z * fd.dim(x.label).sqrt());
                    out.coords.rows_mut(b.offset, b.len).copy_from(&v);
                }
            }
        }
        out
    }

    /// `g ∘ f`; one recoupling move pairs the middle object.
    pub fn module_compose(&self, g: &ModuleHom, f: &ModuleHom) -> Result<ModuleHom> {
        if g.source() != f.target() {
            return Err(AlgebraError::Shape("composing module morphisms through different objects".into()));
        }
        let fd = self.fd();
        let basis = self.module_hom_space(f.source(), g.target());
        let mut out = ModuleHom::zero(&basis);
        for gb in &g.basis.blocks {
            let gv = g.component(gb);
            if gv.iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            let z = g.basis.target_summands[gb.target].label;
            let y = g.basis.source_summands[gb.source].label;
            let t = gb.s;
            for fb in f.basis.blocks.iter().filter(|fb| fb.target == gb.source) {
                let fv = f.component(fb);
                if fv.iter().all(|w| w.norm() == 0.0) {
                    continue;
                }
                let x = f.basis.source_summands[fb.source].label;
                let s = fb.s;
                let key = [z, t, s, x];
                let row = Channel::new(y, gb.mu, fb.mu);
                for u in fd.fuse(t, s) {
                    if self.dim(u) == 0 {
                        continue;
                    }
                    for alpha in 0..fd.n(t, s, u) {
                        let prod = self.product(t, s, u, alpha, &gv, &fv);
                        for beta in 0..fd.n(z, u, x) {
                            let coef = fd.uinv(key, Channel::new(u, beta, alpha), row);
                            if coef.norm() == 0.0 {
                                continue;
                            }
                            let ob = basis.block(gb.target, fb.source, u, beta).expect("output block");
                            let mut dst = out.coords.rows_mut(ob.offset, ob.len);
                            dst += &prod * coef;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Dagger of `M_A`: each vertex is bent through `coev` and the coefficient is starred.
    pub fn module_adjoint(&self, f: &ModuleHom) -> Result<ModuleHom> {
        let fd = self.fd();
        let basis = self.module_hom_space(f.target(), f.source());
        let mut out = ModuleHom::zero(&basis);
        for fb in &f.basis.blocks {
            let v = f.component(fb);
            if v.iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            let x = f.basis.source_summands[fb.source].label;
            let y = f.basis.target_summands[fb.target].label;
            let s = fb.s;
            let js = self.star(s, &v)?;
            let r = fd.vertex_bend(x, y, s);
            for beta in 0..r.nrows() {
                let z = r[(beta, fb.mu)];
                if z.norm() == 0.0 {
                    continue;
                }
                let ob = basis.block(fb.source, fb.target, fd.dual(s), beta).expect("adjoint block");
                let mut dst = out.coords.rows_mut(ob.offset, ob.len);
                dst += &js * z;
            }
        }
        Ok(out)
    }

    /// `1_e ⊗ f : (e⊗x)_A → (e⊗y)_A`, with `e⊗x` decomposed in the order of `fuse_objects`.
    pub fn module_tensor_left(&self, e: &Object, f: &ModuleHom) -> ModuleHom {
        let fd = self.fd();
        let (ex, ex_lists) = fd.fuse_objects(e, f.source());
        let (ey, ey_lists) = fd.fuse_objects(e, f.target());
        let basis = self.module_hom_space(&ex, &ey);
        let mut out = ModuleHom::zero(&basis);
        let src_index = summand_index(f.source());
        let tgt_index = summand_index(f.target());
        let ex_index = summand_index(&ex);
        let ey_index = summand_index(&ey);
        for (cp, list_p) in ex_lists.iter().enumerate() {
            for (kp, fp) in list_p.iter().enumerate() {
                for (cq, list_q) in ey_lists.iter().enumerate() {
                    for (kq, fq) in list_q.iter().enumerate() {
                        if fp.left != fq.left {
                            continue;
                        }
                        let i = src_index[&fp.right];
                        let j = tgt_index[&fq.right];
                        let el = fp.left.label;
                        let vp = fd.wm_vertex(el, fp.right.label, cp, fp.vertex).scale(c(fd.dim(cp).sqrt()));
                        let vq = fd.wm_vertex(el, fq.right.label, cq, fq.vertex).scale(c(fd.dim(cq).sqrt()));
                        for fb in f.basis.blocks.iter().filter(|b| b.source == i && b.target == j) {
                            let v = f.component(fb);
                            if v.iter().all(|z| z.norm() == 0.0) {
                                continue;
                            }
                            let s = fb.s;
                            let mu = fd.wm_vertex(fq.right.label, s, fp.right.label, fb.mu);
                            let lifted = fd.wm_tensor(&fd.wm_identity(&fd.word1(el)), &mu);
                            let down = fd.wm_tensor(&fd.wm_adjoint(&vq), &fd.wm_identity(&fd.word1(s)));
                            let w = fd.wm_compose(&down, &fd.wm_compose(&lifted, &vp));
                            let coeffs = vertex_coefficients(fd, cp, cq, s, &w);
                            let (ip, jq) = (ex_index[&Summand { label: cp, copy: kp }], ey_index[&Summand { label: cq, copy: kq }]);
                            for (beta, z) in coeffs.into_iter().enumerate() {
                                if z.norm() == 0.0 {
                                    continue;
                                }
                                let ob = basis.block(jq, ip, s, beta).expect("tensor block");
                                let mut dst = out.coords.rows_mut(ob.offset, ob.len);
                                dst += &v * z;
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Position of every summand in `x.summands()`.
pub fn summand_index(x: &Object) -> HashMap<Summand, usize> {
    x.summands().into_iter().enumerate().map(|(k, s)| (s, k)).collect()
}

/// Coefficients `c_μ = d_x · (μ* ∘ W)` of `W : x → y⊗s` in the basis of `C(x, y⊗s)`.
pub fn vertex_coefficients(fd: &FusionData, x: Label, y: Label, s: Label, w: &WordMorphism) -> Vec<C64> {
    (0..fd.n(y, s, x))
        .map(|mu| {
            let adj = fd.wm_adjoint(&fd.wm_vertex(y, s, x, mu));
            fd.wm_scalar(&fd.wm_compose(&adj, w)) * fd.dim(x)
        })
        .collect()
}
