//! States on the polynomial algebra of a discrete quantum group, via the operator `Φ̂`.
//!
//! A fiber functor `F : C → Hilb` is given by the dimensions `dim F(a)`, the maps
//! `α̂ = F(α)∘η : F(a)⊗F(b) → F(c)` for the basis vertices `α ∈ C(a⊗b, c)` and the functionals
//! `ev̂_a : F(ā)⊗F(a) → C`. A family `Φ_a ∈ End(F(a))` defines `φ(u^a_{ij}) = (Φ_a)_{ij}`.
//! The matrix of `Φ̂` on `H_Λ = ⊕_{a∈Λ} F(a)*⊗F(a)` has entries
//! `Φ̂[(b,k,l), (a,i,j)] = φ((u^b_{kl})^# u^a_{ij})`.

use std::collections::BTreeMap;
use std::sync::Arc;

use algebra_objects::AlgebraObject;
use category_core::linalg::{c, herm_eig, max_abs, op_norm};
use category_core::{Check, DMatrix, DVector, FusionData, Label, Report, C64};

use crate::{CpError, Multiplier, Result};

#[derive(Clone, Debug)]
pub struct FiberFunctor {
    pub fd: Arc<FusionData>,
    pub dims: Vec<usize>,
    /// `α̂` for `(a, b, c, α)`, a `dim F(c) × (dim F(a)·dim F(b))` matrix; `F(a)⊗F(b)` is row-major.
    pub vertices: BTreeMap<(Label, Label, Label, usize), DMatrix<C64>>,
    /// `ev̂_a` as a vector over `F(ā)⊗F(a)`, row-major.
    pub evs: Vec<DVector<C64>>,
}

impl FiberFunctor {
    /// The one-dimensional functor of a pointed category with trivial tensorator.
    pub fn pointed(fd: Arc<FusionData>) -> Result<Self> {
        let r = fd.rank();
        let mut vertices = BTreeMap::new();
        for a in 0..r {
            for b in 0..r {
                let fused = fd.fuse(a, b);
                if fused.len() != 1 || fd.n(a, b, fused[0]) != 1 || (fd.dim(a) - 1.0).abs() > fd.tolerance() {
                    return Err(CpError::Unsupported("the category is not pointed".into()));
                }
                vertices.insert((a, b, fused[0], 0), DMatrix::from_element(1, 1, c(1.0)));
            }
        }
        let evs = (0..r).map(|_| DVector::from_element(1, c(1.0))).collect();
        Ok(FiberFunctor { fd, dims: vec![1; r], vertices, evs })
    }

    fn vertex(&self, a: Label, b: Label, cc: Label, alpha: usize) -> Result<&DMatrix<C64>> {
        self.vertices
            .get(&(a, b, cc, alpha))
            .ok_or_else(|| CpError::Shape(format!("fiber functor has no vertex ({a}, {b}, {cc}, {alpha})")))
    }
}

/// A family `Φ_a ∈ End(F(a))` with a finite cutoff `Λ`.
#[derive(Clone, Debug)]
pub struct QGMultiplier {
    pub functor: FiberFunctor,
    pub phi: Vec<DMatrix<C64>>,
    pub cutoff: Vec<Label>,
}

impl QGMultiplier {
    pub fn new(functor: FiberFunctor, phi: Vec<DMatrix<C64>>, cutoff: Vec<Label>) -> Result<Self> {
        if phi.len() != functor.fd.rank() {
            return Err(CpError::Shape("one Φ_a per label expected".into()));
        }
        for (a, m) in phi.iter().enumerate() {
            let n = functor.dims[a];
            if m.nrows() != n || m.ncols() != n {
                return Err(CpError::Shape(format!("Φ_{a} is not an endomorphism of F({a})")));
            }
        }
        if cutoff.iter().any(|&a| a >= functor.fd.rank()) {
            return Err(CpError::Shape("cutoff label out of range".into()));
        }
        Ok(QGMultiplier { functor, phi, cutoff })
    }

    /// Pointed category, `Φ_a = values[a]`, cutoff all labels.
    pub fn pointed(fd: Arc<FusionData>, values: &[C64]) -> Result<Self> {
        let r = fd.rank();
        let functor = FiberFunctor::pointed(fd)?;
        let phi = values.iter().map(|&z| DMatrix::from_element(1, 1, z)).collect();
        Self::new(functor, phi, (0..r).collect())
    }

    /// `φ((u^b_{kl})^# u^a_{ij})`.
    fn coefficient(&self, b: Label, k: usize, l: usize, a: Label, i: usize, j: usize) -> Result<C64> {
        let f = &self.functor;
        let fd = &f.fd;
        let bb = fd.dual(b);
        let (nbb, na, nb) = (f.dims[bb], f.dims[a], f.dims[b]);
        // (u^b_{kl})^# = S(u^b_{lk}) = r ⊗ s with r ∈ F(b̄)*, s ∈ F(b̄).
        let r = DVector::from_fn(nbb, |m, _| f.evs[b][m * nb + k]);
        let s = DVector::from_fn(nbb, |n, _| f.evs[bb][l * nbb + n].conj());
        let left = DVector::from_fn(nbb * na, |idx, _| r[idx / na] * if idx % na == i { c(1.0) } else { c(0.0) });
        let right = DVector::from_fn(nbb * na, |idx, _| s[idx / na] * if idx % na == j { c(1.0) } else { c(0.0) });
        let mut total = c(0.0);
        for cc in fd.fuse(bb, a) {
            for alpha in 0..fd.n(bb, a, cc) {
                let v = f.vertex(bb, a, cc, alpha)?;
                let x = v * &right;
                let y = &self.phi[cc] * x;
                let back = v.adjoint() * y;
                total += left.iter().zip(back.iter()).map(|(p, q)| p * q).sum::<C64>() * fd.dim(cc);
            }
        }
        Ok(total)
    }

    /// The matrix of `Φ̂` on `H_Λ`, basis `(a, i, j)` in cutoff order.
    pub fn phi_hat(&self) -> Result<DMatrix<C64>> {
        let dims = &self.functor.dims;
        let index: Vec<(Label, usize, usize)> =
            self.cutoff.iter().flat_map(|&a| (0..dims[a]).flat_map(move |i| (0..dims[a]).map(move |j| (a, i, j)))).collect();
        let n = index.len();
        let mut m = DMatrix::zeros(n, n);
        for (row, &(b, k, l)) in index.iter().enumerate() {
            for (col, &(a, i, j)) in index.iter().enumerate() {
                m[(row, col)] = self.coefficient(b, k, l, a, i, j)?;
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Debug)]
pub struct QgCertificate {
    pub is_state: bool,
    pub min_eigenvalue: f64,
    pub max_norm: f64,
    /// `is_ucp` of the matching multiplier, when the algebra was supplied.
    pub ucp_agrees: Option<bool>,
    pub report: Report,
}

/// Positivity of `Φ̂` on `H_Λ` together with `Φ_1 = 1`.
pub fn qg_state_check(q: &QGMultiplier) -> Result<QgCertificate> {
    if q.cutoff.is_empty() {
        return Err(CpError::EmptyCutoff);
    }
    let fd = &q.functor.fd;
    let tol = fd.tolerance();
    let m = q.phi_hat()?;
    let scale = max_abs(&m).max(1.0);
    let herm = max_abs(&(&m - m.adjoint()));
    let (vals, vecs) = herm_eig(&((&m + m.adjoint()) * c(0.5)));
    let min = vals[0];
    let one = fd.unit();
    let unit = (q.phi[one][(0, 0)] - c(1.0)).norm();
    let max_norm = q.cutoff.iter().map(|&a| if q.phi[a].is_empty() { 0.0 } else { op_norm(&q.phi[a]) }).fold(0.0, f64::max);
    let mut report = Report::default();
    report.push(Check::new("phi_hat_hermitian", herm, tol * scale));
    report.push(Check::lower_bound("phi_hat_positive", min, tol * scale));
    report.push(Check::new("unital", unit, tol));
    if min < -tol * scale {
        report.witness("phi_hat_positive", format!("eigenvalue {min:.6e}"), vecs.column(0).iter().cloned().collect());
    }
    Ok(QgCertificate { is_state: report.pass(), min_eigenvalue: min, max_norm, ucp_agrees: None, report })
}

/// [`qg_state_check`] plus agreement with [`crate::is_ucp`] of `θ_a(x) = Φ_aᵀ x` on `A`.
///
/// Only pointed categories are supported, where `A` is the group algebra.
pub fn qg_state_check_with(q: &QGMultiplier, a: &AlgebraObject) -> Result<QgCertificate> {
    let mut cert = qg_state_check(q)?;
    if q.functor.dims.iter().any(|&n| n != 1) || a.dims().iter().any(|&n| n != 1) {
        return Err(CpError::Unsupported("the cross-check needs a pointed category and its group algebra".into()));
    }
    let maps = q.phi.iter().map(|m| m.transpose()).collect();
    let theta = Multiplier::new(a, a, maps)?;
    let ucp = theta.ucp()?.is_ucp;
    cert.ucp_agrees = Some(ucp == cert.is_state);
    cert.report.push(Check::new("agrees_with_is_ucp", if ucp == cert.is_state { 0.0 } else { 1.0 }, 0.0));
    Ok(cert)
}
