//! `Ad(v)` and the Stinespring dilation of a ucp map into `B(H)`.

use algebra_objects::BhAlgebra;
use category_core::linalg::{c, herm_eig, max_abs};
use category_core::{Check, DMatrix, Report, C64};
use graded_spaces::{FiberMap, GradedSpace, Sandwich};
use representations::{bh_from_action, Representation};

use crate::positivity::{universal_object, universal_row};
use crate::{amplify, CpError, Multiplier, Result};

/// `Ad(v) : B(K) ⇒ B(H)`, `f ↦ (1 ⊗ v*) ∘ f ∘ (1 ⊗ v)` for `v : H → K`.
///
/// On the block `(c, t, α)` this is `X ↦ v_c* X v_t`.
pub fn ad(v: &FiberMap) -> Result<Multiplier> {
    let (h, k) = (&v.source, &v.target);
    let bh_h = BhAlgebra::new(h)?;
    let bh_k = BhAlgebra::new(k)?;
    let vs = v.adjoint();
    let r = h.rank();
    let mut maps = Vec::with_capacity(r);
    for s in 0..r {
        let mut m = DMatrix::zeros(bh_h.algebra.dim(s), bh_k.algebra.dim(s));
        for bh in &bh_h.blocks[s] {
            let Some(bk) = bh_k.blocks[s].iter().find(|b| (b.c, b.t, b.alpha) == (bh.c, bh.t, bh.alpha)) else { continue };
            let (nc, nt) = (h.dim(bh.c), h.dim(bh.t));
            let (kc, kt) = (k.dim(bh.c), k.dim(bh.t));
            let (left, right) = (&vs.blocks[bh.c], &v.blocks[bh.t]);
            for p in 0..nc {
                for q in 0..nt {
                    for pp in 0..kc {
                        for qq in 0..kt {
                            m[(bh.offset + p * nt + q, bk.offset + pp * kt + qq)] = left[(p, pp)] * right[(qq, q)];
                        }
                    }
                }
            }
        }
        maps.push(m);
    }
    Multiplier::new(&bh_k.algebra, &bh_h.algebra, maps)?.with_target_representation(Representation::identity(&bh_h))
}

/// `θ = Ad(v) ∘ π` with `π : A → B(K)` a representation and `v : H → K` an isometry.
#[derive(Clone, Debug)]
pub struct Dilation {
    pub k: GradedSpace,
    pub pi: Representation,
    pub v: FiberMap,
    pub report: Report,
}

/// Stinespring dilation of a ucp `θ : A ⇒ B(H)`.
///
/// `K` is the separated quotient of `A⊗H ≅ X⊗H`, `X` as in [`crate::is_ucp`], for the form
/// `⟨ζ, ζ'⟩ = ⟨ζ, Θ_X(F*F) ζ'⟩`. A negative direction of this form is returned as
/// [`CpError::NotPositive`].
pub fn stinespring(theta: &Multiplier, bh: &BhAlgebra) -> Result<Dilation> {
    let a = &theta.source;
    let fd = a.fd().clone();
    if !std::sync::Arc::ptr_eq(&fd, bh.fd()) {
        return Err(CpError::Ambient);
    }
    if theta.target.dims() != bh.algebra.dims() {
        return Err(CpError::Shape("the multiplier does not land in B(H)".into()));
    }
    let unit_res = theta.unit_residual();
    if unit_res > fd.tolerance() {
        return Err(CpError::NotUnital(unit_res));
    }
    let tol = fd.tolerance();
    let h = &bh.h;
    let x = universal_object(a);
    let f = universal_row(a);
    let ff = a.module_compose(&a.module_adjoint(&f)?, &f)?;
    let image = amplify(theta, &x, &x).apply(&ff)?;
    let (w, _, p) = Representation::identity(bh).realize(&image)?;

    let r = fd.rank();
    let mut proj = Vec::with_capacity(r);
    let mut lift = Vec::with_capacity(r);
    let mut dims = Vec::with_capacity(r);
    for e in 0..r {
        let n = w.space.dim(e);
        if n == 0 {
            proj.push(DMatrix::zeros(0, 0));
            lift.push(DMatrix::zeros(0, 0));
            dims.push(0);
            continue;
        }
        let q = w.space.gram(e) * &p.blocks[e];
        let q = (&q + q.adjoint()) * c(0.5);
        let scale = max_abs(&q).max(1.0);
        let (vals, vecs) = herm_eig(&q);
        if vals[0] < -tol * scale {
            return Err(CpError::NotPositive { label: e, eigenvalue: vals[0], witness: vecs.column(0).iter().cloned().collect() });
        }
        let keep: Vec<usize> = (0..n).filter(|&i| vals[i] > tol.sqrt() * scale).collect();
        let pr = DMatrix::from_fn(keep.len(), n, |i, j| vecs[(j, keep[i])].conj() * vals[keep[i]].sqrt());
        let li = DMatrix::from_fn(n, keep.len(), |j, i| vecs[(j, keep[i])] / vals[keep[i]].sqrt());
        dims.push(keep.len());
        proj.push(pr);
        lift.push(li);
    }
    let k = GradedSpace::with_dims(fd.clone(), &dims);

    // v places ξ on the `i_A ⊗ 1 ⊗ ξ` summand and is normalized to an isometry.
    let one = fd.unit();
    let unit = a.unit();
    let mut v = FiberMap::zero(h, &k);
    for e in 0..r {
        if h.dim(e) == 0 || k.dim(e) == 0 {
            continue;
        }
        let mut iota = DMatrix::zeros(w.space.dim(e), h.dim(e));
        for (pi, sm) in x.summands().iter().enumerate() {
            if sm.label != one {
                continue;
            }
            for j in 0..h.dim(e) {
                if let Some(pos) = w.parts[pi].position(e, e, 0, j) {
                    iota[(w.offsets[pi][e] + pos, j)] += unit[sm.copy];
                }
            }
        }
        let ve = &proj[e] * iota;
        let ginv = h.gram(e).clone().try_inverse().expect("Gram matrices are invertible");
        let kappa = (ginv * ve.adjoint() * &ve).trace().re / h.dim(e) as f64;
        v.blocks[e] = ve / c(kappa.sqrt());
    }

    let bhk = BhAlgebra::new(&k)?;
    let ksrc = Sandwich::new(&k, &[], &[]);
    let summands = x.summands();
    let proj_part = |q: usize| -> FiberMap {
        let part = &w.parts[q];
        let blocks = (0..r).map(|e| proj[e].columns(w.offsets[q][e], part.space.dim(e)).into_owned()).collect();
        FiberMap { source: part.space.clone(), target: ksrc.space.clone(), blocks }
    };
    let lift_part = |q: usize| -> FiberMap {
        let part = &w.parts[q];
        let blocks = (0..r).map(|e| lift[e].rows(w.offsets[q][e], part.space.dim(e)).into_owned()).collect();
        FiberMap { source: ksrc.space.clone(), target: part.space.clone(), blocks }
    };
    let mut maps = Vec::with_capacity(r);
    for d in 0..r {
        let nd = a.dim(d);
        let mut m = DMatrix::zeros(bhk.algebra.dim(d), nd);
        if nd == 0 || bhk.algebra.dim(d) == 0 {
            maps.push(m);
            continue;
        }
        let dsrc = Sandwich::new(&k, &[d], &[]);
        let mut actions = vec![FiberMap::zero(&dsrc.space, &ksrc.space); nd];
        for (pi, sp) in summands.iter().enumerate() {
            let (_, ntgt, ext) = Sandwich::extend(&[d], &lift_part(pi), &ksrc, &w.parts[pi], true)?;
            for fl in fd.fuse(d, sp.label) {
                if a.dim(fl) == 0 {
                    continue;
                }
                for gamma in 0..fd.n(d, sp.label, fl) {
                    let gadj = fd.wm_adjoint(&fd.wm_vertex(d, sp.label, fl, gamma));
                    let mut pieces = Vec::new();
                    for (qi, sq) in summands.iter().enumerate() {
                        if sq.label != fl {
                            continue;
                        }
                        let step = Sandwich::apply_left(&ntgt, &w.parts[qi], &gadj)?;
                        pieces.push((sq.copy, proj_part(qi).compose(&step)?.compose(&ext)?));
                    }
                    for (kk, act) in actions.iter_mut().enumerate() {
                        let prod = a.product(d, sp.label, fl, gamma, &basis(nd, kk), &basis(a.dim(sp.label), sp.copy));
                        for (copy, piece) in &pieces {
                            let z = prod[*copy] * fd.dim(fl);
                            if z.norm() == 0.0 {
                                continue;
                            }
                            *act = act.add(&piece.scale(z))?;
                        }
                    }
                }
            }
        }
        for (kk, act) in actions.iter().enumerate() {
            m.set_column(kk, &bh_from_action(&bhk, d, act)?);
        }
        maps.push(m);
    }
    let pi = Representation::new(a, bhk, maps)?;

    let mut report = Report::default();
    report.push(Check::new("isometry", v.isometry_defect(), tol));
    report.extend(pi.check()?);
    let recon = ad(&v)?.compose(&Multiplier::from_representation(&pi)?)?;
    let scale = theta.norms().iter().fold(1.0, |m: f64, &n| m.max(n));
    let res = (0..r)
        .map(|s| if theta.maps[s].is_empty() { 0.0 } else { max_abs(&(&recon.maps[s] - &theta.maps[s])) })
        .fold(0.0, f64::max);
    report.push(Check::new("reconstruction", res, tol * scale));
    Ok(Dilation { k, pi, v, report })
}

fn basis(n: usize, k: usize) -> category_core::DVector<C64> {
    let mut v = category_core::DVector::zeros(n);
    v[k] = c(1.0);
    v
}

impl Dilation {
    pub fn dims(&self) -> Vec<usize> {
        self.k.dims()
    }
}
