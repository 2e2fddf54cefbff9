//! Amplification of a multiplier to the module categories.
//!
//! `M_A(x, y)` is stored as `⊕_s C(x, y⊗s) ⊗ A(s)`. The Frobenius isomorphism with
//! `A(ȳ⊗x) = ⊕_c C(c, ȳ⊗x) ⊗ A(c)` only moves the `C`-factor, and `θ` is natural, so the
//! ONB resolution in the amplification formula reduces to `μ ⊗ f ↦ μ ⊗ θ_s(f)` block by block.

use std::sync::Arc;

use algebra_objects::{ModuleBasis, ModuleHom};
use category_core::{DMatrix, DVector, Label, Object, C64};

use crate::{CpError, Multiplier, Result};

/// `Θ_{x,y} : M_A(x, y) → M_B(x, y)` as a matrix on module coordinates.
#[derive(Clone, Debug)]
pub struct Amplification {
    pub source: Arc<ModuleBasis>,
    pub target: Arc<ModuleBasis>,
    pub matrix: DMatrix<C64>,
}

impl Amplification {
    pub fn apply(&self, f: &ModuleHom) -> Result<ModuleHom> {
        if f.coords.len() != self.source.dim || f.source() != &self.source.source || f.target() != &self.source.target {
            return Err(CpError::Shape("amplification applied outside its domain".into()));
        }
        Ok(ModuleHom::from_coords(&self.target, &self.matrix * &f.coords)?)
    }
}

pub fn amplify(theta: &Multiplier, x: &Object, y: &Object) -> Amplification {
    let source = theta.source.module_hom_space(x, y);
    let target = theta.target.module_hom_space(x, y);
    let mut matrix = DMatrix::zeros(target.dim, source.dim);
    for b in &source.blocks {
        let Some(tb) = target.block(b.target, b.source, b.s, b.mu) else { continue };
        matrix.view_mut((tb.offset, b.offset), (tb.len, b.len)).copy_from(&theta.maps[b.s]);
    }
    Amplification { source, target, matrix }
}

/// `Θ_{c,1}` on `M_A(c, 1) ≅ A(c)`, read back as a matrix `A(c) → B(c)`.
pub fn fiber_component(theta: &Multiplier, c: Label) -> Result<DMatrix<C64>> {
    let a = &theta.source;
    let fd = a.fd();
    let amp = amplify(theta, &Object::simple(fd.rank(), c), &Object::simple(fd.rank(), fd.unit()));
    let n = a.dim(c);
    let mut out = DMatrix::zeros(theta.target.dim(c), n);
    let scale = C64::new(fd.dim(c).sqrt(), 0.0);
    for k in 0..n {
        let mut x = DVector::zeros(n);
        x[k] = C64::new(1.0, 0.0);
        let g = amp.apply(&a.fiber_to_module(c, &x))?;
        if let Some(b) = g.basis.block(0, 0, c, 0) {
            out.set_column(k, &(g.component(b) / scale));
        }
    }
    Ok(out)
}
