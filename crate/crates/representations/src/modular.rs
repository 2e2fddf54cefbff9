//! Modular conjugation on the tracial GNS space and the identity `JMJ = M'`.
//!
//! `J_a : L²(a) → L²(ā)` is `[f] ↦ [j_a(f)]`, stored as a matrix `M_a` with `J_a v = M_a conj(v)`.
//! Only the actions on `s⊗L²` and `L²⊗s̄` are conjugated here, which is what `JMJ = M'` needs.

use std::collections::{BTreeMap, HashMap};

use category_core::linalg::{max_abs, range_basis};
use category_core::{Check, DMatrix, Label, Report, C64};
use algebra_objects::AlgebraObject;
use graded_spaces::{FiberMap, Sandwich};

use crate::commutant::residual_outside;
use crate::representation::unit_vector;
use crate::{commutant, Gns, RepError, Result};

#[derive(Clone, Debug)]
pub struct ModularResult {
    pub j: Vec<DMatrix<C64>>,
    /// `s ↦ (dim span JλJ(A(s)), dim M'(s̄, 1))`.
    pub dims: BTreeMap<Label, (usize, usize)>,
    pub report: Report,
}

impl Gns {
    /// `M_a = P_ā S_a conj(L_a)` on the orthonormal `L²` coordinates.
    pub fn conjugation_matrix(&self, a: Label) -> Result<DMatrix<C64>> {
        let alg = &self.state.algebra;
        let ab = alg.fd().dual(a);
        Ok(&self.proj[ab] * alg.star_matrix(a)? * self.lift[a].map(|z| z.conj()))
    }

    /// Blocks of `J λ(x) J` as a right action `L² ⊗ s̄ → L²`, indexed like [`Gns::right_block`].
    ///
    /// With `O_α = J_c λ(x)_α J_b⁻¹` for `α ∈ C(c, s⊗b)`, the conjugate vertex expansion
    /// `K = vertex_conjugation(s, b, c)` gives `T_β = Σ_α O_α (K⁻¹)_{αβ}`.
    pub fn conjugated_left_block(&self, s: Label, x: &category_core::DVector<C64>, g: Label, t: Label, beta: usize) -> Result<Option<DMatrix<C64>>> {
        let fd = self.state.algebra.fd();
        let (cc, b) = (fd.dual(g), fd.dual(t));
        if beta >= fd.n(t, fd.dual(s), g) || self.l2.dim(g) == 0 || self.l2.dim(t) == 0 {
            return Ok(None);
        }
        let k = fd.vertex_conjugation(s, b, cc);
        let kinv = k.clone().try_inverse().ok_or_else(|| RepError::Unsupported("singular vertex conjugation".into()))?;
        let mc = self.conjugation_matrix(cc)?;
        let mb_inv = self
            .conjugation_matrix(b)?
            .try_inverse()
            .ok_or_else(|| RepError::Unsupported("conjugation is not invertible".into()))?;
        let mut out = DMatrix::zeros(self.l2.dim(g), self.l2.dim(t));
        for alpha in 0..fd.n(s, b, cc) {
            let Some(lam) = self.left.block(s, x, cc, b, alpha) else { continue };
            let o = &mc * lam.map(|z| z.conj()) * &mb_inv;
            out += o * kinv[(alpha, beta)];
        }
        Ok(Some(out))
    }
}

/// `J`, its involution and isometry laws, `JλJ = ρ∘j` on generators, and `JMJ = M'` fiberwise.
pub fn modular_conjugation(gns: &Gns) -> Result<ModularResult> {
    if !gns.state.is_trace {
        return Err(RepError::NotATrace);
    }
    let alg: &AlgebraObject = &gns.state.algebra;
    let fd = alg.fd().clone();
    let tol = fd.tolerance();
    let r = fd.rank();
    let mut j = Vec::with_capacity(r);
    let mut iso = 0.0f64;
    let mut inv = 0.0f64;
    for a in 0..r {
        let m = gns.conjugation_matrix(a)?;
        if !m.is_empty() {
            iso = iso.max(max_abs(&(m.adjoint() * &m - DMatrix::identity(m.ncols(), m.ncols()))));
        }
        j.push(m);
    }
    for a in 0..r {
        if j[a].is_empty() {
            continue;
        }
        let back = &j[fd.dual(a)] * j[a].map(|z| z.conj());
        let z = AlgebraObject::double_dual_scalar(&fd, a);
        inv = inv.max(max_abs(&(back - DMatrix::identity(j[a].ncols(), j[a].ncols()) * z)));
    }
    let comm = commutant(&gns.left)?;
    let mut right = 0.0f64;
    let mut containment = 0.0f64;
    let mut dims = BTreeMap::new();
    for s in alg.support() {
        let sb = fd.dual(s);
        let src = Sandwich::new(&gns.l2, &[], &[sb]);
        let tgt = Sandwich::new(&gns.l2, &[], &[]);
        let mut cols = Vec::new();
        for k in 0..alg.dim(s) {
            let x = unit_vector(alg.dim(s), k);
            let jx = alg.star(s, &x)?;
            let mut blocks = HashMap::new();
            for g in gns.l2.support() {
                for t in gns.l2.support() {
                    for beta in 0..fd.n(t, sb, g) {
                        let Some(tb) = gns.conjugated_left_block(s, &x, g, t, beta)? else { continue };
                        if let Some(rb) = gns.right_block(sb, &jx, g, t, beta) {
                            right = right.max(max_abs(&(&tb - rb)));
                        }
                        blocks.insert((g, t, beta), tb);
                    }
                }
            }
            let op = Sandwich::vertex_action(&src, &tgt, sb, false, &|g, t, beta| blocks.get(&(g, t, beta)).cloned())?;
            cols.push(op.flatten());
        }
        let n = FiberMap::coordinate_count(&src.space, &tgt.space);
        let span = DMatrix::from_fn(n, cols.len(), |i, k| cols[k][i]);
        let frame = range_basis(&span, comm.threshold);
        let sol = &comm.spaces[&(sb, fd.unit())];
        let target = sol.frame();
        for k in 0..frame.ncols() {
            containment = containment.max(residual_outside(&frame.column(k).into_owned(), &target));
        }
        for k in 0..target.ncols() {
            containment = containment.max(residual_outside(&target.column(k).into_owned(), &frame));
        }
        dims.insert(s, (frame.ncols(), sol.dim()));
    }
    let mismatch = dims.values().filter(|(x, y)| x != y).count() as f64;
    let mut report = Report::default();
    report.push(Check::new("j_isometric", iso, tol));
    report.push(Check::new("j_involutive", inv, tol));
    report.push(Check::new("j_lambda_j_is_rho", right, tol));
    report.push(Check::new("jmj_dims_equal_commutant", mismatch, 0.0));
    report.push(Check::new("jmj_mutual_containment", containment, 1e-8));
    Ok(ModularResult { j, dims, report })
}
