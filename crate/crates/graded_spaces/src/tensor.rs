//! Tensor products of graded spaces, associators, unitors and creation maps.
//!
//! `(H⊗K)(c) = ⊕_{s,t} H(s) ⊗ C(c, s⊗t) ⊗ K(t)` with the balanced inner product
//! `⟨ξ⊗α⊗η, ξ'⊗α'⊗η'⟩ = (d_s d_t)⁻¹ ⟨ξ,ξ'⟩⟨α,α'⟩⟨η,η'⟩`.

use std::collections::HashMap;

use category_core::linalg::c;
use category_core::{Channel, DMatrix, Label, C64};

use crate::{FiberMap, GradedError, GradedSpace, Result};

/// Coordinate `ξ_i ⊗ α ⊗ η_j` of a tensor product fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorEntry {
    pub s: Label,
    pub i: usize,
    pub alpha: usize,
    pub t: Label,
    pub j: usize,
}

/// Ordered coordinates of every fiber of `H⊗K`, sorted by `(s, t, α, i, j)`.
#[derive(Clone, Debug)]
pub struct TensorIndex {
    pub entries: Vec<Vec<TensorEntry>>,
    /// Gram weight `1/(d_s d_t)` of each entry.
    pub weights: Vec<Vec<f64>>,
    offsets: Vec<HashMap<(Label, Label, usize), usize>>,
    inner_dims: (Vec<usize>, Vec<usize>),
}

impl TensorIndex {
    /// Position of `(s, i, α, t, j)` in fiber `c`.
    pub fn position(&self, cc: Label, e: TensorEntry) -> Option<usize> {
        let off = *self.offsets[cc].get(&(e.s, e.t, e.alpha))?;
        Some(off + e.i * self.inner_dims.1[e.t] + e.j)
    }

    /// Offset of the `(s, t, α)` block in fiber `c`.
    pub fn block(&self, cc: Label, s: Label, t: Label, alpha: usize) -> Option<usize> {
        self.offsets[cc].get(&(s, t, alpha)).copied()
    }
}

/// `H⊗K` together with its coordinate index.
pub fn tensor(h: &GradedSpace, k: &GradedSpace) -> Result<(GradedSpace, TensorIndex)> {
    h.check_ambient(k)?;
    let fd = h.fd().clone();
    let r = fd.rank();
    let mut entries = vec![Vec::new(); r];
    let mut weights = vec![Vec::new(); r];
    let mut offsets = vec![HashMap::new(); r];
    let mut grams = Vec::with_capacity(r);
    for cc in 0..r {
        let mut blocks = Vec::new();
        for s in 0..r {
            for t in 0..r {
                if h.dim(s) == 0 || k.dim(t) == 0 {
                    continue;
                }
                for alpha in 0..fd.n(s, t, cc) {
                    offsets[cc].insert((s, t, alpha), entries[cc].len());
                    let w = 1.0 / (fd.dim(s) * fd.dim(t));
                    for i in 0..h.dim(s) {
                        for j in 0..k.dim(t) {
                            entries[cc].push(TensorEntry { s, i, alpha, t, j });
                            weights[cc].push(w);
                        }
                    }
                    blocks.push(h.gram(s).kronecker(k.gram(t)) * c(w));
                }
            }
        }
        grams.push(category_core::linalg::block_diag(&blocks));
    }
    let idx = TensorIndex { entries, weights, offsets, inner_dims: (h.dims(), k.dims()) };
    Ok((GradedSpace::from_parts(fd, grams), idx))
}

/// `f⊗g : H⊗K → H'⊗K'`, blockwise `f_s ⊗ g_t` on every `(s, t, α)` summand.
pub fn tensor_maps(f: &FiberMap, g: &FiberMap) -> Result<FiberMap> {
    let (src, si) = tensor(&f.source, &g.source)?;
    let (tgt, ti) = tensor(&f.target, &g.target)?;
    let mut out = FiberMap::zero(&src, &tgt);
    for cc in 0..src.rank() {
        for (&(s, t, alpha), &off) in &si.offsets[cc] {
            let Some(toff) = ti.block(cc, s, t, alpha) else { continue };
            let kb = f.blocks[s].kronecker(&g.blocks[t]);
            out.blocks[cc].view_mut((toff, off), (kb.nrows(), kb.ncols())).copy_from(&kb);
        }
    }
    Ok(out)
}

/// Associator `H⊗(K⊗L) → (H⊗K)⊗L`.
///
/// The summand `ξ⊗α⊗(η⊗β⊗ζ)`, `α ∈ C(c, a⊗b)`, `β ∈ C(b, d⊗e)`, is the right-nested
/// tree `(1⊗β)α`; re-expanding it in left-nested trees `(γ⊗1)δ` gives the recoupling
/// coefficients `U[(f,γ,δ), (b,α,β)]` for the key `(a, d, e, c)`.
pub fn associator(h: &GradedSpace, k: &GradedSpace, l: &GradedSpace) -> Result<FiberMap> {
    let (kl, kli) = tensor(k, l)?;
    let (src, si) = tensor(h, &kl)?;
    let (hk, hki) = tensor(h, k)?;
    let (tgt, ti) = tensor(&hk, l)?;
    let fd = h.fd().clone();
    let mut out = FiberMap::zero(&src, &tgt);
    for cc in 0..src.rank() {
        for (col, e1) in si.entries[cc].iter().enumerate() {
            let (a, b) = (e1.s, e1.t);
            let inner = kli.entries[b][e1.j];
            let (d, e) = (inner.s, inner.t);
            let src_ch = Channel::new(b, e1.alpha, inner.alpha);
            for f in fd.fuse(a, d) {
                if hk.dim(f) == 0 {
                    continue;
                }
                for gamma in 0..fd.n(a, d, f) {
                    for delta in 0..fd.n(f, e, cc) {
                        let u = fd.u([a, d, e, cc], Channel::new(f, gamma, delta), src_ch);
                        if u.norm() == 0.0 {
                            continue;
                        }
                        let mid = hki
                            .position(f, crate::TensorEntry { s: a, i: e1.i, alpha: gamma, t: d, j: inner.i })
                            .expect("middle entry");
                        let row = ti
                            .position(cc, crate::TensorEntry { s: f, i: mid, alpha: delta, t: e, j: inner.j })
                            .expect("target entry");
                        out.blocks[cc][(row, col)] += u;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `λ : 1⊗H → H`; the summand `1⊗u_c⊗ξ` is `d_c^{-1/2} ξ`.
pub fn left_unitor(h: &GradedSpace) -> Result<FiberMap> {
    let fd = h.fd().clone();
    let one = GradedSpace::unit(fd.clone());
    let (src, si) = tensor(&one, h)?;
    let mut out = FiberMap::zero(&src, h);
    for cc in 0..h.rank() {
        if let Some(off) = si.block(cc, fd.unit(), cc, 0) {
            for j in 0..h.dim(cc) {
                out.blocks[cc][(j, off + j)] = c(fd.dim(cc).powf(-0.5));
            }
        }
    }
    Ok(out)
}

/// `ρ : H⊗1 → H`.
pub fn right_unitor(h: &GradedSpace) -> Result<FiberMap> {
    let fd = h.fd().clone();
    let one = GradedSpace::unit(fd.clone());
    let (src, si) = tensor(h, &one)?;
    let mut out = FiberMap::zero(&src, h);
    for cc in 0..h.rank() {
        if let Some(off) = si.block(cc, cc, fd.unit(), 0) {
            for j in 0..h.dim(cc) {
                out.blocks[cc][(j, off + j)] = c(fd.dim(cc).powf(-0.5));
            }
        }
    }
    Ok(out)
}

/// Identification `H → H̄̄`, the pivotal scalar on each fiber.
pub fn double_conjugate_iso(h: &GradedSpace) -> FiberMap {
    let hh = h.conjugate().conjugate();
    let fd = h.fd();
    let blocks = (0..h.rank()).map(|s| DMatrix::identity(h.dim(s), h.dim(s)) * fd.duality(s).pivotal).collect();
    FiberMap { source: h.clone(), target: hh, blocks }
}

/// Creation map `L^{α,x} : H → a⊗H`, `ξ ↦ α ⊠ x(ξ)` on the `c` fiber, zero elsewhere.
///
/// `α` is the basis vertex `alpha` of `C(c, a⊗b)` and `x : H(c) → H(b)`. The target is
/// `yoneda(a)⊗H`, whose basis vector in fiber `a` is `d_a^{-1/2}` times the identity of `a`.
pub fn creation(h: &GradedSpace, a: Label, b: Label, cc: Label, alpha: usize, x: &DMatrix<C64>) -> Result<FiberMap> {
    let fd = h.fd().clone();
    if alpha >= fd.n(a, b, cc) {
        return Err(GradedError::Shape(format!("no vertex {alpha} in C({cc}, {a}⊗{b})")));
    }
    if x.nrows() != h.dim(b) || x.ncols() != h.dim(cc) {
        return Err(GradedError::Shape("creation operand has the wrong shape".into()));
    }
    let ya = GradedSpace::yoneda(fd.clone(), &category_core::Object::simple(fd.rank(), a));
    let (tgt, ti) = tensor(&ya, h)?;
    let mut out = FiberMap::zero(h, &tgt);
    if let Some(off) = ti.block(cc, a, b, alpha) {
        let scaled = x * c(fd.dim(a).sqrt());
        out.blocks[cc].view_mut((off, 0), (x.nrows(), x.ncols())).copy_from(&scaled);
    }
    Ok(out)
}
