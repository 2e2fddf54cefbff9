//! Endomorphism algebras of `M_A` and the C*-decision for algebra objects.

use std::sync::Arc;

use category_core::{Channel, Check, DMatrix, Label, Object, Report, C64};

use crate::{AlgebraError, AlgebraObject, CStarDecision, ConcreteStarAlgebra, ModuleBasis, ModuleHom, Result};

/// `End_{M_A}(x_A)` with its coordinates.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    pub basis: Arc<ModuleBasis>,
    pub algebra: ConcreteStarAlgebra,
}

impl EndoAlgebra {
    pub fn element(&self, h: &ModuleHom) -> category_core::DVector<C64> {
        h.coords.clone()
    }

    pub fn hom(&self, v: &category_core::DVector<C64>) -> ModuleHom {
        ModuleHom { basis: self.basis.clone(), coords: v.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct CStarResult {
    pub is_cstar: bool,
    pub decision: CStarDecision,
    /// Labels `s` of the fibers carrying the witness.
    pub witness_labels: Vec<Label>,
    pub report: Report,
}

impl AlgebraObject {
    /// Structure constants of `End(x_A)` from module composition and the module dagger.
    pub fn endo_algebra(&self, x: &Object) -> Result<EndoAlgebra> {
        if !self.has_star() {
            return Err(AlgebraError::MissingStar);
        }
        let basis = self.module_hom_space(x, x);
        let n = basis.dim;
        let fd = self.fd();
        // left[k][(m, l)]: coefficient of e_m in e_k ∘ e_l, assembled block pair by block pair
        // with the same recoupling as `module_compose`.
        let mut left = vec![DMatrix::zeros(n, n); n];
        for gb in &basis.blocks {
            let z = basis.target_summands[gb.target].label;
            let y = basis.source_summands[gb.source].label;
            let t = gb.s;
            for fb in basis.blocks.iter().filter(|fb| fb.target == gb.source) {
                let xl = basis.source_summands[fb.source].label;
                let s = fb.s;
                let key = [z, t, s, xl];
                let row = Channel::new(y, gb.mu, fb.mu);
                for u in fd.fuse(t, s) {
                    if self.dim(u) == 0 {
                        continue;
                    }
                    for alpha in 0..fd.n(t, s, u) {
                        let Some(m) = self.mult_components().get(&(t, s, u, alpha)) else { continue };
                        for beta in 0..fd.n(z, u, xl) {
                            let coef = fd.uinv(key, Channel::new(u, beta, alpha), row);
                            if coef.norm() == 0.0 {
                                continue;
                            }
                            let ob = basis.block(gb.target, fb.source, u, beta).expect("output block");
                            for p in 0..gb.len {
                                let lk = &mut left[gb.offset + p];
                                for q in 0..fb.len {
                                    for r in 0..ob.len {
                                        lk[(ob.offset + r, fb.offset + q)] += m[(r, p * fb.len + q)] * coef;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let unit_vec = |k: usize| {
            let mut h = ModuleHom::zero(&basis);
            h.coords[k] = C64::new(1.0, 0.0);
            h
        };
        let elems: Vec<ModuleHom> = (0..n).map(unit_vec).collect();
        let mut star = DMatrix::zeros(n, n);
        for (k, ek) in elems.iter().enumerate() {
            star.set_column(k, &self.module_adjoint(ek)?.coords);
        }
        let unit = self.module_identity(x).coords;
        Ok(EndoAlgebra { basis, algebra: ConcreteStarAlgebra::new(left, star, unit)? })
    }

    /// Positivity of the regular trace form on `End(Ω_A)`, `Ω` the sum of all simples.
    ///
    /// The algebra and star axioms must hold; otherwise the decision is refused.
    pub fn is_cstar(&self) -> Result<CStarResult> {
        let mut report = self.check_algebra_axioms();
        report.extend(self.check_star_axioms()?);
        if !report.pass() {
            return Err(AlgebraError::Invalid(failed_checks(&report)));
        }
        let omega = Object::all_simples(self.fd().rank());
        let end = self.endo_algebra(&omega)?;
        let tol = self.fd().tolerance();
        let decision = end.algebra.cstar_decision(tol);
        report.push(Check::new("trace_form_hermitian", decision.hermitian_residual, decision.threshold));
        report.push(Check::lower_bound("trace_form_positive", decision.min_eigenvalue - decision.threshold, 0.0));
        let mut witness_labels = Vec::new();
        if let Some(w) = &decision.witness {
            let norm = category_core::linalg::max_abs_vec(w);
            for b in &end.basis.blocks {
                let part = w.rows(b.offset, b.len);
                if part.iter().any(|z| z.norm() > 1e-6 * norm) && !witness_labels.contains(&b.s) {
                    witness_labels.push(b.s);
                }
            }
            witness_labels.sort_unstable();
            let names: Vec<&str> = witness_labels.iter().map(|&s| self.fd().name(s)).collect();
            report.witness(
                "trace_form_positive",
                format!("eigenvalue {:.6e}, supported on fibers {:?}", decision.min_eigenvalue, names),
                w.iter().cloned().collect(),
            );
        }
        Ok(CStarResult { is_cstar: decision.is_cstar, decision, witness_labels, report })
    }
}

pub(crate) fn failed_checks(r: &Report) -> String {
    r.checks.iter().filter(|c| !c.pass).map(|c| format!("{} ({:.3e})", c.name, c.residual)).collect::<Vec<_>>().join(", ")
}
