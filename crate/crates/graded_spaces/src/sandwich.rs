//! Sandwiched spaces `S(X, H, Y)(e) = ⊕_t C(e, X⊗t⊗Y) ⊗ H(t)` for words `X`, `Y`.
//!
//! These realise `X⊗H⊗Y` without nesting tensor products, so that morphisms of `C` acting on
//! the outer words can be applied directly in the tree basis. The coordinate of a fiber vector
//! along `(t, T, j)` is the coefficient of the tree `T` paired with the basis vector `j` of
//! `H(t)`; its Gram is `d_e w(T) d_t⁻¹ G_t`. Unit letters are dropped from words, so on the
//! summand `t = 1` the tree is an identity leg rather than a unit-leg vertex.

use std::collections::HashMap;
use std::sync::Arc;

use category_core::linalg::c;
use category_core::{DMatrix, FusionData, Label, Word, WordMorphism, C64};

use crate::{FiberMap, GradedError, GradedSpace, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SandwichEntry {
    pub t: Label,
    pub tree: usize,
    pub j: usize,
}

#[derive(Clone, Debug)]
pub struct Sandwich {
    pub h: GradedSpace,
    pub left: Word,
    pub right: Word,
    pub space: GradedSpace,
    pub entries: Vec<Vec<SandwichEntry>>,
    offsets: Vec<HashMap<Label, usize>>,
}

impl Sandwich {
    pub fn new(h: &GradedSpace, left: &[Label], right: &[Label]) -> Sandwich {
        let fd = h.fd().clone();
        let left = fd.word(left);
        let right = fd.word(right);
        let r = fd.rank();
        let mut entries = vec![Vec::new(); r];
        let mut offsets = vec![HashMap::new(); r];
        let mut grams = Vec::with_capacity(r);
        for e in 0..r {
            let mut blocks = Vec::new();
            for t in h.support() {
                let ts = fd.trees(&Self::word_with(&fd, &left, t, &right), e);
                if ts.is_empty() {
                    continue;
                }
                offsets[e].insert(t, entries[e].len());
                for (k, w) in ts.weights.iter().enumerate() {
                    for j in 0..h.dim(t) {
                        entries[e].push(SandwichEntry { t, tree: k, j });
                    }
                    blocks.push(h.gram(t) * c(fd.dim(e) * w / fd.dim(t)));
                }
            }
            grams.push(category_core::linalg::block_diag(&blocks));
        }
        Sandwich { h: h.clone(), left, right, space: GradedSpace::from_parts(fd, grams), entries, offsets }
    }

    fn word_with(fd: &FusionData, left: &[Label], t: Label, right: &[Label]) -> Word {
        let mut w = left.to_vec();
        w.extend(fd.word1(t));
        w.extend_from_slice(right);
        w
    }

    pub fn fd(&self) -> &Arc<FusionData> {
        self.h.fd()
    }

    /// The word `X·t·Y`.
    pub fn word(&self, t: Label) -> Word {
        Self::word_with(self.fd(), &self.left, t, &self.right)
    }

    /// Position of `(t, T, j)` in fiber `e`.
    pub fn position(&self, e: Label, t: Label, tree: usize, j: usize) -> Option<usize> {
        let off = *self.offsets[e].get(&t)?;
        Some(off + tree * self.h.dim(t) + j)
    }

    pub fn weight(&self, e: Label, t: Label, tree: usize) -> f64 {
        self.fd().trees(&self.word(t), e).weights[tree]
    }

    /// Fiber vector of `W ⊠ ξ` for `W : e → X·t·Y` and `ξ ∈ H(t)`.
    pub fn vector(&self, e: Label, t: Label, w: &WordMorphism, xi: &category_core::DVector<C64>) -> category_core::DVector<C64> {
        let mut v = category_core::DVector::zeros(self.space.dim(e));
        if let Some(m) = w.blocks.get(&e) {
            for tree in 0..m.nrows() {
                for j in 0..xi.len() {
                    if let Some(p) = self.position(e, t, tree, j) {
                        v[p] += m[(tree, 0)] * xi[j];
                    }
                }
            }
        }
        v
    }

    /// `W_L ⊗ 1_H ⊗ W_R` from `src` to `tgt`, with `W_L : X → X'` and `W_R : Y → Y'`.
    pub fn outer(src: &Sandwich, tgt: &Sandwich, wl: &WordMorphism, wr: &WordMorphism) -> Result<FiberMap> {
        if wl.source != src.left || wl.target != tgt.left || wr.source != src.right || wr.target != tgt.right {
            return Err(GradedError::Shape("outer morphisms do not match the sandwich words".into()));
        }
        src.h.check_ambient(&tgt.h)?;
        let fd = src.fd().clone();
        let mut out = FiberMap::zero(&src.space, &tgt.space);
        for t in src.h.support() {
            let m = fd.wm_tensor(wl, &fd.wm_tensor(&fd.wm_identity(&fd.word1(t)), wr));
            for (&e, block) in &m.blocks {
                let ws = fd.trees(&src.word(t), e);
                for tree in 0..block.ncols() {
                    for t2 in 0..block.nrows() {
                        let z = block[(t2, tree)] * ws.weights[tree];
                        if z.norm() == 0.0 {
                            continue;
                        }
                        for j in 0..src.h.dim(t) {
                            let (Some(col), Some(row)) = (src.position(e, t, tree, j), tgt.position(e, t, t2, j)) else {
                                continue;
                            };
                            out.blocks[e][(row, col)] += z;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `W ⊗ 1_{H⊗Y}` for `W : X → X'`.
    pub fn apply_left(src: &Sandwich, tgt: &Sandwich, w: &WordMorphism) -> Result<FiberMap> {
        let fd = src.fd();
        Self::outer(src, tgt, w, &fd.wm_identity(&src.right))
    }

    /// `1_{X⊗H} ⊗ W` for `W : Y → Y'`.
    pub fn apply_right(src: &Sandwich, tgt: &Sandwich, w: &WordMorphism) -> Result<FiberMap> {
        let fd = src.fd();
        Self::outer(src, tgt, &fd.wm_identity(&src.left), w)
    }

    /// Absorbs the innermost outer letter `s` into `H` through a family of vertex actions.
    ///
    /// On the left, `src = S(X·s, H, Y)` and `tgt = S(X, H, Y)`; `blocks(g, t, α)` is the matrix
    /// `H(t) → H(g)` attached to `α ∈ C(g, s⊗t)`. On the right, `src = S(X, H, s·Y)` and `α ∈ C(g, t⊗s)`.
    /// Each tree `T` is contracted with `α*` and the result scaled by `d_g`.
    pub fn vertex_action(
        src: &Sandwich,
        tgt: &Sandwich,
        s: Label,
        left: bool,
        blocks: &dyn Fn(Label, Label, usize) -> Option<DMatrix<C64>>,
    ) -> Result<FiberMap> {
        let fd = src.fd().clone();
        let ok = if left {
            let mut l = tgt.left.clone();
            l.extend(fd.word1(s));
            src.right == tgt.right && src.left == l
        } else {
            let mut r = fd.word1(s);
            r.extend_from_slice(&tgt.right);
            src.left == tgt.left && src.right == r
        };
        if !ok {
            return Err(GradedError::Shape("vertex action between incompatible sandwiches".into()));
        }
        let mut out = FiberMap::zero(&src.space, &tgt.space);
        let idl = fd.wm_identity(&tgt.left);
        let idr = fd.wm_identity(&tgt.right);
        for t in src.h.support() {
            for g in tgt.h.support() {
                let (a, b) = if left { (s, t) } else { (t, s) };
                for alpha in 0..fd.n(a, b, g) {
                    let Some(bl) = blocks(g, t, alpha) else { continue };
                    let vadj = fd.wm_adjoint(&fd.wm_vertex(a, b, g, alpha));
                    let v = fd.wm_tensor(&idl, &fd.wm_tensor(&vadj, &idr));
                    let dg = fd.dim(g);
                    for (&e, m) in &v.blocks {
                        let ws = fd.trees(&src.word(t), e);
                        for tree in 0..m.ncols() {
                            for t2 in 0..m.nrows() {
                                let z = m[(t2, tree)] * ws.weights[tree] * dg;
                                if z.norm() == 0.0 {
                                    continue;
                                }
                                for j in 0..src.h.dim(t) {
                                    let Some(col) = src.position(e, t, tree, j) else { continue };
                                    for i in 0..tgt.h.dim(g) {
                                        let Some(row) = tgt.position(e, g, t2, i) else { continue };
                                        out.blocks[e][(row, col)] += z * bl[(i, j)];
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `1_Z ⊗ f` (or `f ⊗ 1_Z` when `left` is false) for `f : S(X, H, Y) → S(X', K, Y')`.
    pub fn extend(z: &[Label], f: &FiberMap, src: &Sandwich, tgt: &Sandwich, left: bool) -> Result<(Sandwich, Sandwich, FiberMap)> {
        let fd = src.fd().clone();
        let z = fd.word(z);
        let cat = |a: &[Label], b: &[Label]| -> Word {
            let mut w = a.to_vec();
            w.extend_from_slice(b);
            w
        };
        let (nsrc, ntgt) = if left {
            (
                Sandwich::new(&src.h, &cat(&z, &src.left), &src.right),
                Sandwich::new(&tgt.h, &cat(&z, &tgt.left), &tgt.right),
            )
        } else {
            (
                Sandwich::new(&src.h, &src.left, &cat(&src.right, &z)),
                Sandwich::new(&tgt.h, &tgt.left, &cat(&tgt.right, &z)),
            )
        };
        let mut out = FiberMap::zero(&nsrc.space, &ntgt.space);
        let idz = fd.wm_identity(&z);
        for t in src.h.support() {
            for t2 in tgt.h.support() {
                for j in 0..src.h.dim(t) {
                    for i in 0..tgt.h.dim(t2) {
                        let mut m = fd.wm_zero(&src.word(t), &tgt.word(t2));
                        let mut nonzero = false;
                        for e in 0..fd.rank() {
                            let ws = fd.trees(&src.word(t), e);
                            let wt = fd.trees(&tgt.word(t2), e);
                            if ws.is_empty() || wt.is_empty() {
                                continue;
                            }
                            let blk = DMatrix::from_fn(wt.len(), ws.len(), |r, k| {
                                match (tgt.position(e, t2, r, i), src.position(e, t, k, j)) {
                                    (Some(row), Some(col)) => f.blocks[e][(row, col)] / ws.weights[k],
                                    _ => c(0.0),
                                }
                            });
                            if category_core::linalg::max_abs(&blk) > 0.0 {
                                nonzero = true;
                                m.blocks.insert(e, blk);
                            }
                        }
                        if !nonzero {
                            continue;
                        }
                        let ext = if left { fd.wm_tensor(&idz, &m) } else { fd.wm_tensor(&m, &idz) };
                        for (&e, blk) in &ext.blocks {
                            let ws = fd.trees(&nsrc.word(t), e);
                            for k in 0..blk.ncols() {
                                let Some(col) = nsrc.position(e, t, k, j) else { continue };
                                for r in 0..blk.nrows() {
                                    let Some(row) = ntgt.position(e, t2, r, i) else { continue };
                                    out.blocks[e][(row, col)] += blk[(r, k)] * ws.weights[k];
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok((nsrc, ntgt, out))
    }
}
