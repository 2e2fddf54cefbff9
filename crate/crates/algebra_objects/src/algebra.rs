//! Algebra objects in `Vec(C)`: a fiber per simple, a multiplication tensor, a unit and an
//! optional star structure.
//!
//! The component `μ^c_α : A(s) ⊗ A(t) → A(c)` for `α ∈ C(c, s⊗t)` is stored as an
//! `n_c × (n_s n_t)` matrix acting on `x ⊗ y` with column index `i n_t + j`. The star is
//! `j_s(x) = J_s conj(x)` with `J_s` an `n_{s̄} × n_s` matrix.

use std::collections::BTreeMap;
use std::sync::Arc;

use category_core::linalg::{c, max_abs};
use category_core::{Check, DMatrix, DVector, FusionData, Label, Report, C64};

use crate::{AlgebraError, Result};

/// Key `(s, t, c, α)` of a multiplication component.
pub type MultKey = (Label, Label, Label, usize);

#[derive(Clone, Debug)]
pub struct AlgebraObject {
    fd: Arc<FusionData>,
    dims: Vec<usize>,
    mult: BTreeMap<MultKey, DMatrix<C64>>,
    unit: DVector<C64>,
    star: Option<Vec<DMatrix<C64>>>,
}

impl AlgebraObject {
    /// Checks shapes only; the axioms are reported by [`AlgebraObject::check_algebra_axioms`].
    pub fn new(
        fd: Arc<FusionData>,
        dims: Vec<usize>,
        mult: BTreeMap<MultKey, DMatrix<C64>>,
        unit: DVector<C64>,
        star: Option<Vec<DMatrix<C64>>>,
    ) -> Result<Self> {
        let r = fd.rank();
        if dims.len() != r {
            return Err(AlgebraError::Shape(format!("{} fiber dimensions for rank {r}", dims.len())));
        }
        if dims.iter().all(|&n| n == 0) {
            return Err(AlgebraError::Shape("empty support".into()));
        }
        if unit.len() != dims[fd.unit()] {
            return Err(AlgebraError::Shape("unit does not lie in the unit fiber".into()));
        }
        for (&(s, t, cc, alpha), m) in &mult {
            if s >= r || t >= r || cc >= r || alpha >= fd.n(s, t, cc) {
                return Err(AlgebraError::Shape(format!("no vertex {alpha} in C({cc}, {s}⊗{t})")));
            }
            if m.nrows() != dims[cc] || m.ncols() != dims[s] * dims[t] {
                return Err(AlgebraError::Shape(format!("multiplication ({s},{t},{cc},{alpha}) has shape {:?}", m.shape())));
            }
        }
        if let Some(j) = &star {
            if j.len() != r {
                return Err(AlgebraError::Shape("one star matrix per label expected".into()));
            }
            for (s, m) in j.iter().enumerate() {
                if m.nrows() != dims[fd.dual(s)] || m.ncols() != dims[s] {
                    return Err(AlgebraError::Shape(format!("star matrix of fiber {s} has shape {:?}", m.shape())));
                }
            }
        }
        Ok(AlgebraObject { fd, dims, mult, unit, star })
    }

    pub fn fd(&self) -> &Arc<FusionData> {
        &self.fd
    }

    pub fn dim(&self, s: Label) -> usize {
        self.dims[s]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn support(&self) -> Vec<Label> {
        (0..self.dims.len()).filter(|&s| self.dims[s] > 0).collect()
    }

    pub fn unit(&self) -> &DVector<C64> {
        &self.unit
    }

    pub fn mult_components(&self) -> &BTreeMap<MultKey, DMatrix<C64>> {
        &self.mult
    }

    pub fn star_matrices(&self) -> Option<&[DMatrix<C64>]> {
        self.star.as_deref()
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    /// The same algebra with another (or no) star structure.
    pub fn with_star(self, star: Option<Vec<DMatrix<C64>>>) -> Result<Self> {
        AlgebraObject::new(self.fd, self.dims, self.mult, self.unit, star)
    }

    /// Component `μ^c_α`, zero when not stored.
    pub fn mult(&self, s: Label, t: Label, cc: Label, alpha: usize) -> DMatrix<C64> {
        self.mult
            .get(&(s, t, cc, alpha))
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.dims[cc], self.dims[s] * self.dims[t]))
    }

    /// `μ^c_α(x, y)`.
    pub fn product(&self, s: Label, t: Label, cc: Label, alpha: usize, x: &DVector<C64>, y: &DVector<C64>) -> DVector<C64> {
        match self.mult.get(&(s, t, cc, alpha)) {
            Some(m) => m * x.kronecker(y),
            None => DVector::zeros(self.dims[cc]),
        }
    }

    /// `j_s(x) = J_s conj(x)` in `A(s̄)`.
    pub fn star(&self, s: Label, x: &DVector<C64>) -> Result<DVector<C64>> {
        let j = self.star.as_ref().ok_or(AlgebraError::MissingStar)?;
        Ok(&j[s] * x.map(|z| z.conj()))
    }

    pub fn star_matrix(&self, s: Label) -> Result<&DMatrix<C64>> {
        Ok(&self.star.as_ref().ok_or(AlgebraError::MissingStar)?[s])
    }

    /// `dim A(1) = 1`.
    pub fn is_connected(&self) -> bool {
        self.dims[self.fd.unit()] == 1
    }

    /// Every fiber is finite dimensional, which holds for every value of this type.
    pub fn is_locally_finite(&self) -> bool {
        true
    }

    /// Associativity through one recoupling move and both unit laws.
    pub fn check_algebra_axioms(&self) -> Report {
        let fd = &self.fd;
        let tol = fd.tolerance();
        let mut rep = Report::default();
        let supp = self.support();
        let mut worst = 0.0f64;
        let mut worst_at = None;
        for &s in &supp {
            for &t in &supp {
                for &u in &supp {
                    let r = self.associativity_residual(s, t, u);
                    if r > worst {
                        worst = r;
                        worst_at = Some((s, t, u));
                    }
                }
            }
        }
        let scale = self.scale();
        rep.push(Check::new("associativity", worst, tol * scale * scale));
        if worst > tol * scale * scale {
            if let Some((s, t, u)) = worst_at {
                rep.witness("associativity", format!("fibers ({}, {}, {})", fd.name(s), fd.name(t), fd.name(u)), vec![c(worst)]);
            }
        }
        let one = fd.unit();
        let mut left = 0.0f64;
        let mut right = 0.0f64;
        for &t in &supp {
            let n = self.dims[t];
            let id = DMatrix::<C64>::identity(n, n) * c(fd.dim(t).powf(-0.5));
            let ml = self.mult(one, t, t, 0) * self.unit.kronecker(&DMatrix::<C64>::identity(n, n));
            let mr = self.mult(t, one, t, 0) * DMatrix::<C64>::identity(n, n).kronecker(&self.unit);
            left = left.max(max_abs(&(ml - &id)));
            right = right.max(max_abs(&(mr - &id)));
        }
        rep.push(Check::new("left_unit", left, tol * scale));
        rep.push(Check::new("right_unit", right, tol * scale));
        rep
    }

    fn scale(&self) -> f64 {
        self.mult.values().map(max_abs).fold(1.0, f64::max)
    }

    /// `μ_δ(μ_γ ⊗ 1) = Σ U⁻¹ μ_α(1 ⊗ μ_β)` on `A(s)⊗A(t)⊗A(u)`, worst over every output channel.
    pub fn associativity_residual(&self, s: Label, t: Label, u: Label) -> f64 {
        let fd = &self.fd;
        let (ns, nt, nu) = (self.dims[s], self.dims[t], self.dims[u]);
        let mut worst = 0.0f64;
        for e in fd.labels() {
            if self.dims[e] == 0 {
                continue;
            }
            let key = [s, t, u, e];
            let rows = fd.row_channels(key);
            let cols = fd.col_channels(key);
            let rights: Vec<DMatrix<C64>> = cols
                .iter()
                .map(|col| {
                    let inner = self.mult(t, u, col.mid, col.m2);
                    let outer = self.mult(s, col.mid, e, col.m1);
                    outer * DMatrix::<C64>::identity(ns, ns).kronecker(&inner)
                })
                .collect();
            for row in &rows {
                let inner = self.mult(s, t, row.mid, row.m1);
                let outer = self.mult(row.mid, u, e, row.m2);
                let mut diff = outer * inner.kronecker(&DMatrix::<C64>::identity(nu, nu));
                for (col, r) in cols.iter().zip(&rights) {
                    let z = fd.uinv(key, *col, *row);
                    if z.norm() != 0.0 {
                        diff -= r * z;
                    }
                }
                if diff.nrows() > 0 && ns * nt * nu > 0 {
                    worst = worst.max(max_abs(&diff));
                }
            }
        }
        worst
    }

    /// Scalar `z_s` with `(ev_s̄ ⊗ 1_s)(1_s ⊗ ev_s*) = z_s id_s`; `j_s̄ j_s = z_s` on `A(s)`.
    pub fn double_dual_scalar(fd: &FusionData, s: Label) -> C64 {
        let sb = fd.dual(s);
        let step1 = fd.wm_tensor(&fd.wm_identity(&fd.word1(s)), &fd.wm_adjoint(&fd.wm_ev(s)));
        let step2 = fd.wm_tensor(&fd.wm_ev(sb), &fd.wm_identity(&fd.word1(s)));
        fd.wm_scalar(&fd.wm_compose(&step2, &step1))
    }

    /// Involutive, unital and monoidal laws of the star.
    pub fn check_star_axioms(&self) -> Result<Report> {
        let j = self.star.as_ref().ok_or(AlgebraError::MissingStar)?;
        let fd = &self.fd;
        let tol = fd.tolerance();
        let scale = self.scale().max(j.iter().map(|m| if m.is_empty() { 0.0 } else { max_abs(m) }).fold(1.0, f64::max));
        let mut rep = Report::default();
        let mut inv = 0.0f64;
        for s in self.support() {
            let sb = fd.dual(s);
            let z = Self::double_dual_scalar(fd, s);
            let jj = &j[sb] * j[s].map(|w| w.conj());
            let n = self.dims[s];
            inv = inv.max(max_abs(&(jj - DMatrix::<C64>::identity(n, n) * z)));
        }
        rep.push(Check::new("star_involutive", inv, tol * scale * scale));
        let one = fd.unit();
        let unital = if self.unit.is_empty() {
            0.0
        } else {
            category_core::linalg::max_abs_vec(&(&j[one] * self.unit.map(|w| w.conj()) - &self.unit))
        };
        rep.push(Check::new("star_unital", unital, tol * scale));
        let mut mono = 0.0f64;
        let mut worst_at = None;
        for s in self.support() {
            for t in self.support() {
                let (ns, nt) = (self.dims[s], self.dims[t]);
                let swap = swap_matrix(ns, nt);
                let jts = j[t].kronecker(&j[s]);
                for cc in fd.fuse(s, t) {
                    if self.dims[cc] == 0 {
                        continue;
                    }
                    let (sb, tb, cb) = (fd.dual(s), fd.dual(t), fd.dual(cc));
                    let k = fd.vertex_conjugation(s, t, cc);
                    for alpha in 0..fd.n(s, t, cc) {
                        let lhs = &j[cc] * self.mult(s, t, cc, alpha).map(|w| w.conj());
                        let mut rhs = DMatrix::zeros(lhs.nrows(), lhs.ncols());
                        for beta in 0..fd.n(tb, sb, cb) {
                            rhs += self.mult(tb, sb, cb, beta) * &jts * &swap * k[(beta, alpha)];
                        }
                        if !lhs.is_empty() {
                            let r = max_abs(&(lhs - rhs));
                            if r > mono {
                                mono = r;
                                worst_at = Some((s, t, cc));
                            }
                        }
                    }
                }
            }
        }
        rep.push(Check::new("star_monoidal", mono, tol * scale * scale * scale));
        if mono > tol * scale * scale * scale {
            if let Some((s, t, cc)) = worst_at {
                rep.witness("star_monoidal", format!("C({}, {}⊗{})", fd.name(cc), fd.name(s), fd.name(t)), vec![c(mono)]);
            }
        }
        Ok(rep)
    }
}

/// Permutation `x⊗y ↦ y⊗x` from `C^{ns}⊗C^{nt}` to `C^{nt}⊗C^{ns}`.
pub(crate) fn swap_matrix(ns: usize, nt: usize) -> DMatrix<C64> {
    let mut p = DMatrix::zeros(ns * nt, ns * nt);
    for i in 0..ns {
        for j in 0..nt {
            p[(j * ns + i, i * nt + j)] = c(1.0);
        }
    }
    p
}
