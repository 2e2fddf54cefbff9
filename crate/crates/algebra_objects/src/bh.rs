//! The algebra object `B(H)` with fibers `B(H)(s) = Hom(s⊗H, H)`.
//!
//! The fiber `s` is `⊕_{c, t, α ∈ C(c, s⊗t)} Hom(H(t), H(c))`, each block flattened row-major.
//! As a natural transformation `yoneda(s)⊗H → H` the block `(c, t, α)` is `d_s^{-1/2} X_α`.

use std::collections::BTreeMap;
use std::sync::Arc;

use category_core::linalg::c;
use category_core::{Channel, DMatrix, DVector, Label, C64};
use graded_spaces::{FiberMap, GradedSpace};

use crate::{AlgebraError, AlgebraObject, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BhBlock {
    pub c: Label,
    pub t: Label,
    pub alpha: usize,
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct BhAlgebra {
    pub h: GradedSpace,
    pub algebra: AlgebraObject,
    /// Blocks of each fiber.
    pub blocks: Vec<Vec<BhBlock>>,
}

impl BhAlgebra {
    pub fn new(h: &GradedSpace) -> Result<BhAlgebra> {
        let fd = h.fd().clone();
        if h.support().is_empty() {
            return Err(AlgebraError::Shape("B(H) of the zero space".into()));
        }
        let r = fd.rank();
        let supp = h.support();
        let mut blocks = vec![Vec::new(); r];
        let mut dims = vec![0; r];
        for s in 0..r {
            for &cc in &supp {
                for &t in &supp {
                    for alpha in 0..fd.n(s, t, cc) {
                        blocks[s].push(BhBlock { c: cc, t, alpha, offset: dims[s] });
                        dims[s] += h.dim(cc) * h.dim(t);
                    }
                }
            }
        }
        let mut mult = BTreeMap::new();
        for s in 0..r {
            for t in 0..r {
                if dims[s] == 0 || dims[t] == 0 {
                    continue;
                }
                for u in fd.fuse(s, t) {
                    if dims[u] == 0 {
                        continue;
                    }
                    for alpha in 0..fd.n(s, t, u) {
                        let m = Self::product_matrix(h, &blocks, &dims, s, t, u, alpha);
                        mult.insert((s, t, u, alpha), m);
                    }
                }
            }
        }
        let one = fd.unit();
        let mut unit = DVector::zeros(dims[one]);
        for b in &blocks[one] {
            if b.c == b.t {
                let n = h.dim(b.c);
                for p in 0..n {
                    unit[b.offset + p * n + p] = c(fd.dim(b.c).powf(-0.5));
                }
            }
        }
        let star = (0..r).map(|s| Self::star_matrix(h, &blocks, &dims, s)).collect();
        let algebra = AlgebraObject::new(fd, dims, mult, unit, Some(star))?;
        Ok(BhAlgebra { h: h.clone(), algebra, blocks })
    }

    fn find(blocks: &[BhBlock], cc: Label, t: Label, alpha: usize) -> Option<&BhBlock> {
        blocks.iter().find(|b| b.c == cc && b.t == t && b.alpha == alpha)
    }

    /// `Z^{e,r}_δ = Σ U⁻¹[(b,α',β),(u,α,δ)] X^{e,b}_{α'} Y^{b,r}_β` for the key `(s, t, r, e)`.
    fn product_matrix(
        h: &GradedSpace,
        blocks: &[Vec<BhBlock>],
        dims: &[usize],
        s: Label,
        t: Label,
        u: Label,
        alpha: usize,
    ) -> DMatrix<C64> {
        let fd = h.fd();
        let mut m = DMatrix::zeros(dims[u], dims[s] * dims[t]);
        for xb in &blocks[s] {
            let (e, b) = (xb.c, xb.t);
            for yb in blocks[t].iter().filter(|yb| yb.c == b) {
                let r = yb.t;
                for delta in 0..fd.n(u, r, e) {
                    let coef = fd.uinv([s, t, r, e], Channel::new(b, xb.alpha, yb.alpha), Channel::new(u, alpha, delta));
                    if coef.norm() == 0.0 {
                        continue;
                    }
                    let zb = Self::find(&blocks[u], e, r, delta).expect("product block");
                    let (ne, nb, nr) = (h.dim(e), h.dim(b), h.dim(r));
                    for p in 0..ne {
                        for q in 0..nb {
                            for w in 0..nr {
                                let col = (xb.offset + p * nb + q) * dims[t] + yb.offset + q * nr + w;
                                m[(zb.offset + p * nr + w, col)] += coef;
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// `j(X)^{c,t}_β = d_c Σ_α S[β,α] G_c⁻¹ (X^{t,c}_α)† G_t` with
    /// `S[β,α] = (ev_s ⊗ 1_c)(1_s̄ ⊗ α) β`, `α ∈ C(t, s⊗c)`, `β ∈ C(c, s̄⊗t)`.
    fn star_matrix(h: &GradedSpace, blocks: &[Vec<BhBlock>], dims: &[usize], s: Label) -> DMatrix<C64> {
        let fd = h.fd();
        let sb = fd.dual(s);
        let mut m = DMatrix::zeros(dims[sb], dims[s]);
        for jb in &blocks[sb] {
            let (cc, t, beta) = (jb.c, jb.t, jb.alpha);
            let ginv = h.gram(cc).clone().try_inverse().expect("Gram matrices are invertible");
            let gt = h.gram(t);
            for alpha in 0..fd.n(s, cc, t) {
                let Some(xb) = Self::find(&blocks[s], t, cc, alpha) else { continue };
                let beta_m = fd.wm_vertex(sb, t, cc, beta);
                let alpha_m = fd.wm_vertex(s, cc, t, alpha);
                let step = fd.wm_tensor(&fd.wm_identity(&fd.word1(sb)), &alpha_m);
                let cap = fd.wm_tensor(&fd.wm_ev(s), &fd.wm_identity(&fd.word1(cc)));
                let sc = fd.wm_scalar(&fd.wm_compose(&cap, &fd.wm_compose(&step, &beta_m))) * fd.dim(cc);
                if sc.norm() == 0.0 {
                    continue;
                }
                let (nc, nt) = (h.dim(cc), h.dim(t));
                for p in 0..nc {
                    for q in 0..nt {
                        for a in 0..nc {
                            for b in 0..nt {
                                m[(jb.offset + p * nt + q, xb.offset + b * nc + a)] += sc * ginv[(p, a)] * gt[(b, q)];
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// `x ∈ B(H)(s)` as the natural transformation `yoneda(s)⊗H → H`.
    pub fn as_fiber_map(&self, s: Label, x: &DVector<C64>) -> Result<FiberMap> {
        let fd = self.h.fd().clone();
        let ys = GradedSpace::yoneda(fd.clone(), &category_core::Object::simple(fd.rank(), s));
        let (src, idx) = graded_spaces::tensor(&ys, &self.h)?;
        let mut out = FiberMap::zero(&src, &self.h);
        let k = c(fd.dim(s).powf(-0.5));
        for b in &self.blocks[s] {
            let Some(off) = idx.block(b.c, s, b.t, b.alpha) else { continue };
            let (nc, nt) = (self.h.dim(b.c), self.h.dim(b.t));
            for p in 0..nc {
                for q in 0..nt {
                    out.blocks[b.c][(p, off + q)] += x[b.offset + p * nt + q] * k;
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`BhAlgebra::as_fiber_map`].
    pub fn from_fiber_map(&self, s: Label, f: &FiberMap) -> Result<DVector<C64>> {
        let fd = self.h.fd().clone();
        let ys = GradedSpace::yoneda(fd.clone(), &category_core::Object::simple(fd.rank(), s));
        let (src, idx) = graded_spaces::tensor(&ys, &self.h)?;
        if f.source.dims() != src.dims() || f.target.dims() != self.h.dims() {
            return Err(AlgebraError::Shape("fiber map is not a map s⊗H → H".into()));
        }
        let mut x = DVector::zeros(self.algebra.dim(s));
        let k = c(fd.dim(s).sqrt());
        for b in &self.blocks[s] {
            let Some(off) = idx.block(b.c, s, b.t, b.alpha) else { continue };
            let (nc, nt) = (self.h.dim(b.c), self.h.dim(b.t));
            for p in 0..nc {
                for q in 0..nt {
                    x[b.offset + p * nt + q] = f.blocks[b.c][(p, off + q)] * k;
                }
            }
        }
        Ok(x)
    }

    pub fn fd(&self) -> &Arc<category_core::FusionData> {
        self.h.fd()
    }
}
