//! Representations `π : A → B(H)` and their action on sandwiched spaces.

use category_core::linalg::{c, max_abs_vec};
use category_core::{Check, DMatrix, DVector, Label, Object, Report, C64};
use algebra_objects::{AlgebraObject, BhAlgebra, ModuleHom};
use graded_spaces::{FiberMap, GradedSpace, Sandwich};

use crate::{RepError, Result};

/// An algebra map `π : A → B(H)`, one matrix `A(s) → B(H)(s)` per label.
#[derive(Clone, Debug)]
pub struct Representation {
    pub algebra: AlgebraObject,
    pub bh: BhAlgebra,
    pub maps: Vec<DMatrix<C64>>,
}

impl Representation {
    pub fn new(algebra: &AlgebraObject, bh: BhAlgebra, maps: Vec<DMatrix<C64>>) -> Result<Self> {
        if !std::sync::Arc::ptr_eq(algebra.fd(), bh.fd()) {
            return Err(RepError::Shape("algebra and space live over different categories".into()));
        }
        let r = algebra.fd().rank();
        if maps.len() != r {
            return Err(RepError::Shape("one map per label expected".into()));
        }
        for (s, m) in maps.iter().enumerate() {
            if m.nrows() != bh.algebra.dim(s) || m.ncols() != algebra.dim(s) {
                return Err(RepError::Shape(format!("map on fiber {s} has the wrong shape")));
            }
        }
        Ok(Representation { algebra: algebra.clone(), bh, maps })
    }

    /// `B(H)` acting on `H` by the identity.
    pub fn identity(bh: &BhAlgebra) -> Self {
        let maps = bh.algebra.dims().iter().map(|&n| DMatrix::identity(n, n)).collect();
        Representation { algebra: bh.algebra.clone(), bh: bh.clone(), maps }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.bh.h
    }

    /// `π_s(x) ∈ B(H)(s)`.
    pub fn image(&self, s: Label, x: &DVector<C64>) -> DVector<C64> {
        &self.maps[s] * x
    }

    /// Block `(c, t, α)` of `π_s(x)` as a matrix `H(t) → H(c)`.
    pub fn block(&self, s: Label, x: &DVector<C64>, cc: Label, t: Label, alpha: usize) -> Option<DMatrix<C64>> {
        let v = self.image(s, x);
        bh_block(&self.bh, s, &v, cc, t, alpha)
    }

    /// Multiplicativity, unit and star compatibility.
    pub fn check(&self) -> Result<Report> {
        let a = &self.algebra;
        let b = &self.bh.algebra;
        let fd = a.fd();
        let tol = fd.tolerance();
        let scale = self.maps.iter().filter(|m| !m.is_empty()).map(category_core::linalg::max_abs).fold(1.0, f64::max);
        let mut mult = 0.0f64;
        for s in a.support() {
            for t in a.support() {
                for u in fd.fuse(s, t) {
                    for alpha in 0..fd.n(s, t, u) {
                        for k in 0..a.dim(s) {
                            let x = unit_vector(a.dim(s), k);
                            for l in 0..a.dim(t) {
                                let y = unit_vector(a.dim(t), l);
                                let lhs = self.image(u, &a.product(s, t, u, alpha, &x, &y));
                                let rhs = b.product(s, t, u, alpha, &self.image(s, &x), &self.image(t, &y));
                                mult = mult.max(max_abs_vec(&(lhs - rhs)));
                            }
                        }
                    }
                }
            }
        }
        let one = fd.unit();
        let unit = max_abs_vec(&(self.image(one, a.unit()) - b.unit()));
        let mut report = Report::default();
        report.push(Check::new("multiplicative", mult, tol * scale * scale));
        report.push(Check::new("unital", unit, tol * scale));
        if a.has_star() {
            let mut star = 0.0f64;
            for s in a.support() {
                for k in 0..a.dim(s) {
                    let x = unit_vector(a.dim(s), k);
                    let lhs = self.image(fd.dual(s), &a.star(s, &x)?);
                    let rhs = b.star(s, &self.image(s, &x))?;
                    star = star.max(max_abs_vec(&(lhs - rhs)));
                }
            }
            report.push(Check::new("star", star, tol * scale));
        }
        Ok(report)
    }

    /// `π(x) ⊗ 1_Y : S(s, H, Y) → S(∅, H, Y)` for `x ∈ A(s)`.
    pub fn left_action(&self, s: Label, x: &DVector<C64>, right: &[Label]) -> Result<(Sandwich, Sandwich, FiberMap)> {
        let h = self.space();
        let src = Sandwich::new(h, &[s], right);
        let tgt = Sandwich::new(h, &[], right);
        let v = self.image(s, x);
        let f = Sandwich::vertex_action(&src, &tgt, s, true, &|g, t, alpha| bh_block(&self.bh, s, &v, g, t, alpha))?;
        Ok((src, tgt, f))
    }

    /// The `C`-module functor `M_A → M_{B(H)}` followed by `M_{B(H)}(x, y) ≅ Hom(x⊗H, y⊗H)`.
    ///
    /// A block `μ ⊗ f` becomes `(1_y ⊗ π(f)) ∘ (μ ⊗ 1_H)`.
    pub fn realize(&self, f: &ModuleHom) -> Result<(ObjectSpace, ObjectSpace, FiberMap)> {
        let h = self.space();
        let fd = self.algebra.fd();
        let src = ObjectSpace::new(h, f.source());
        let tgt = ObjectSpace::new(h, f.target());
        let mut out = FiberMap::zero(&src.space, &tgt.space);
        for b in &f.basis.blocks {
            let v = f.component(b);
            if v.iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            let x = f.basis.source_summands[b.source].label;
            let y = f.basis.target_summands[b.target].label;
            let s = b.s;
            let mid = Sandwich::new(h, &[y, s], &[]);
            let mu = fd.wm_vertex(y, s, x, b.mu);
            let step = Sandwich::apply_left(&src.parts[b.source], &mid, &mu)?;
            let pv = self.image(s, &v);
            let act = Sandwich::vertex_action(&mid, &tgt.parts[b.target], s, true, &|g, t, alpha| {
                bh_block(&self.bh, s, &pv, g, t, alpha)
            })?;
            let m = act.compose(&step)?;
            src.accumulate(&tgt, b.source, b.target, &m, &mut out);
        }
        Ok((src, tgt, out))
    }
}

/// `x ⊗ H` for an object `x`, as the direct sum of `S(x_i, H, ∅)` over the summands of `x`.
#[derive(Clone, Debug)]
pub struct ObjectSpace {
    pub object: Object,
    pub parts: Vec<Sandwich>,
    pub space: GradedSpace,
    /// `offsets[i][e]` is the first coordinate of part `i` in fiber `e`.
    pub offsets: Vec<Vec<usize>>,
}

impl ObjectSpace {
    pub fn new(h: &GradedSpace, x: &Object) -> Self {
        let parts: Vec<Sandwich> = x.summands().iter().map(|sm| Sandwich::new(h, &[sm.label], &[])).collect();
        let r = h.rank();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut run = vec![0; r];
        for p in &parts {
            offsets.push(run.clone());
            for (e, o) in run.iter_mut().enumerate() {
                *o += p.space.dim(e);
            }
        }
        let space = if parts.is_empty() {
            GradedSpace::zero(h.fd().clone())
        } else {
            GradedSpace::direct_sum(&parts.iter().map(|p| p.space.clone()).collect::<Vec<_>>()).expect("same ambient")
        };
        ObjectSpace { object: x.clone(), parts, space, offsets }
    }

    fn accumulate(&self, tgt: &ObjectSpace, i: usize, j: usize, m: &FiberMap, out: &mut FiberMap) {
        for e in 0..m.blocks.len() {
            let blk = &m.blocks[e];
            if blk.is_empty() {
                continue;
            }
            let mut view = out.blocks[e].view_mut((tgt.offsets[j][e], self.offsets[i][e]), (blk.nrows(), blk.ncols()));
            view += blk;
        }
    }
}

/// Block `(c, t, α)` of a `B(H)(s)` vector as a matrix `H(t) → H(c)`.
pub fn bh_block(bh: &BhAlgebra, s: Label, v: &DVector<C64>, cc: Label, t: Label, alpha: usize) -> Option<DMatrix<C64>> {
    let b = bh.blocks[s].iter().find(|b| b.c == cc && b.t == t && b.alpha == alpha)?;
    let (nc, nt) = (bh.h.dim(cc), bh.h.dim(t));
    Some(DMatrix::from_fn(nc, nt, |p, q| v[b.offset + p * nt + q]))
}

pub(crate) fn unit_vector(n: usize, k: usize) -> DVector<C64> {
    let mut v = DVector::zeros(n);
    v[k] = c(1.0);
    v
}

/// Inverse of the vertex action: reads `x ∈ B(H)(s)` off the map `S(s, H, ∅) → H` it induces.
pub fn bh_from_action(bh: &BhAlgebra, s: Label, f: &FiberMap) -> Result<DVector<C64>> {
    let h = &bh.h;
    let src = Sandwich::new(h, &[s], &[]);
    let tgt = Sandwich::new(h, &[], &[]);
    if f.source.dims() != src.space.dims() || f.target.dims() != tgt.space.dims() {
        return Err(RepError::Shape("map is not of the form s⊗H → H".into()));
    }
    let mut x = DVector::zeros(bh.algebra.dim(s));
    for b in &bh.blocks[s] {
        let (nc, nt) = (h.dim(b.c), h.dim(b.t));
        let ones = DMatrix::from_element(nc, nt, c(1.0));
        let key = (b.c, b.t, b.alpha);
        let probe = Sandwich::vertex_action(&src, &tgt, s, true, &|g, t, alpha| (key == (g, t, alpha)).then(|| ones.clone()))?;
        let (Some(row), Some(col)) = (tgt.position(b.c, b.c, 0, 0), src.position(b.c, b.t, b.alpha, 0)) else {
            return Err(RepError::Shape(format!("block {key:?} has no coordinates")));
        };
        let k = probe.blocks[b.c][(row, col)];
        for p in 0..nc {
            for q in 0..nt {
                x[b.offset + p * nt + q] = f.blocks[b.c][(row + p, col + q)] / k;
            }
        }
    }
    Ok(x)
}
