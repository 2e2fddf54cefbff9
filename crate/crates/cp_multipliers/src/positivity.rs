//! Complete positivity of a multiplier, decided on one endomorphism algebra.
//!
//! Let `X = ⊕_s s^{⊕ dim A(s)}` and let `F : X_A → 1_A` be the row whose entries are the basis
//! vectors of every fiber. Each morphism `G : Y_A → Z_A` factors as `(1_Z ⊗ F) ∘ (M ⊗ i)` for
//! a morphism `M : Y → Z⊗X` of `C`, so `G*G = M*(1_Z ⊗ F*F)M` and the multiplier property gives
//! `Θ(G*G) = M*(1_Z ⊗ Θ(F*F))M`. Hence `θ` is completely positive iff `Θ_X(F*F) ≥ 0`.

use algebra_objects::{AlgebraObject, ModuleHom};
use category_core::linalg::{c, max_abs, min_eigenvalue as min_eig, op_norm, psd_inv_sqrt, psd_sqrt};
use category_core::{Check, Object, Report};

use representations::gelfand_naimark;

use crate::{amplify, Multiplier, Result};

#[derive(Clone, Debug)]
pub struct UcpResult {
    pub is_ucp: bool,
    pub positive: bool,
    pub unital: bool,
    /// Smallest eigenvalue of `Θ_X(F*F)` realized on `X ⊗ L²(B)`.
    pub min_eigenvalue: f64,
    pub threshold: f64,
    /// The positive element `F*F ∈ End(X_A)` when its image is not positive.
    pub witness: Option<ModuleHom>,
    pub report: Report,
}

/// `⊕_s s^{⊕ dim A(s)}`.
pub fn universal_object(a: &AlgebraObject) -> Object {
    Object { mult: a.dims().to_vec() }
}

/// `F : X_A → 1_A` with the basis vector `e_k ∈ A(s)` on the `k`-th copy of `s`.
pub(crate) fn universal_row(a: &AlgebraObject) -> ModuleHom {
    let fd = a.fd();
    let x = universal_object(a);
    let basis = a.module_hom_space(&x, &Object::simple(fd.rank(), fd.unit()));
    let mut f = ModuleHom::zero(&basis);
    for (i, sm) in basis.source_summands.iter().enumerate() {
        if let Some(b) = basis.block(0, i, sm.label, 0) {
            f.coords[b.offset + sm.copy] = c(fd.dim(sm.label).sqrt());
        }
    }
    f
}

/// `θ` is ucp iff `Θ_X(F*F)` is positive in `End(X_B)` and `θ_1(i_A) = i_B`.
///
/// `B` must be a C*-algebra object. Positivity is read off a faithful representation `B → B(K)`,
/// so `Θ_X(F*F) ≥ 0` iff its realization on `X ⊗ K` is a positive operator. `K` is the one
/// recorded on the multiplier, or `L²(B)` with the Gelfand–Naimark representation.
pub fn is_ucp(theta: &Multiplier) -> Result<UcpResult> {
    let a = &theta.source;
    let b = &theta.target;
    let tol = a.fd().tolerance();
    let x = universal_object(a);
    let f = universal_row(a);
    let ff = a.module_compose(&a.module_adjoint(&f)?, &f)?;
    let image = amplify(theta, &x, &x).apply(&ff)?;
    let (space, _, op) = match theta.target_representation() {
        Some(rep) => rep.realize(&image)?,
        None => gelfand_naimark(b)?.gns.left.realize(&image)?,
    };
    let mut min_eigenvalue = f64::INFINITY;
    let mut herm = 0.0f64;
    let mut norm = 0.0f64;
    for e in 0..op.blocks.len() {
        let n = space.space.dim(e);
        if n == 0 {
            continue;
        }
        let g = space.space.gram(e);
        let (gs, gi) = (psd_sqrt(g), psd_inv_sqrt(g));
        let m = &gs * &op.blocks[e] * &gi;
        herm = herm.max(max_abs(&(&m - m.adjoint())));
        let h = (&m + m.adjoint()) * c(0.5);
        min_eigenvalue = min_eigenvalue.min(min_eig(&h));
        norm = norm.max(op_norm(&m));
    }
    if !min_eigenvalue.is_finite() {
        min_eigenvalue = 0.0;
    }
    let scale = norm.max(1.0);
    let threshold = tol * scale;
    let positive = herm <= threshold && min_eigenvalue >= -threshold;
    let unit = theta.unit_residual();
    let unital = unit <= threshold;
    let mut report = Report::default();
    report.push(Check::new("image_hermitian", herm, threshold));
    report.push(Check::lower_bound("image_positive", min_eigenvalue, threshold));
    report.push(Check::new("unital", unit, threshold));
    let witness = (!positive).then(|| ff.clone());
    if let Some(w) = &witness {
        report.witness("image_positive", format!("F*F maps to an operator with eigenvalue {min_eigenvalue:.6e}"), w.coords.iter().cloned().collect());
    }
    Ok(UcpResult { is_ucp: positive && unital, positive, unital, min_eigenvalue, threshold, witness, report })
}
