//! Standard algebra objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use category_core::linalg::c;
use category_core::{DMatrix, DVector, FusionData, Label, C64};

use crate::{AlgebraError, AlgebraObject, ConcreteStarAlgebra, Result};

fn one_by_one(z: f64) -> DMatrix<C64> {
    DMatrix::from_element(1, 1, c(z))
}

/// The unit object `1` as an algebra: `A(1) = C`, every other fiber zero.
pub fn trivial_algebra(fd: Arc<FusionData>) -> AlgebraObject {
    let base = ConcreteStarAlgebra::matrix_algebra(1);
    free_algebra(fd, &base).expect("the scalars form a *-algebra")
}

/// `A(1) = B` for a finite-dimensional *-algebra `B`, every other fiber zero.
pub fn free_algebra(fd: Arc<FusionData>, base: &ConcreteStarAlgebra) -> Result<AlgebraObject> {
    let n = base.dim();
    let r = fd.rank();
    let one = fd.unit();
    let mut dims = vec![0; r];
    dims[one] = n;
    let mut m = DMatrix::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            m.set_column(i * n + j, &base.left[i].column(j));
        }
    }
    let mut mult = BTreeMap::new();
    mult.insert((one, one, one, 0), m);
    let star = (0..r).map(|s| if s == one { base.star.clone() } else { DMatrix::zeros(0, 0) }).collect();
    AlgebraObject::new(fd, dims, mult, base.unit.clone(), Some(star))
}

fn require_pointed(fd: &FusionData) -> Result<()> {
    for g in fd.labels() {
        if (fd.dim(g) - 1.0).abs() > fd.tolerance() {
            return Err(AlgebraError::Unsupported("group algebras need a pointed category".into()));
        }
        for h in fd.labels() {
            if fd.fuse(g, h).len() != 1 || fd.n(g, h, fd.fuse(g, h)[0]) != 1 {
                return Err(AlgebraError::Unsupported("group algebras need a pointed category".into()));
            }
        }
    }
    Ok(())
}

/// Group algebra over a pointed category: `A(g) = C e_g`, `e_g e_h = w(g,h) e_{gh}`,
/// `e_g* = σ_g e_{g⁻¹}`. The standard algebra has `w = 1`, `σ = 1`.
pub fn group_algebra_with(
    fd: Arc<FusionData>,
    weight: impl Fn(Label, Label) -> f64,
    sign: impl Fn(Label) -> f64,
) -> Result<AlgebraObject> {
    require_pointed(&fd)?;
    let r = fd.rank();
    let mut mult = BTreeMap::new();
    for g in 0..r {
        for h in 0..r {
            let gh = fd.fuse(g, h)[0];
            mult.insert((g, h, gh, 0), one_by_one(weight(g, h)));
        }
    }
    let star = (0..r).map(|g| one_by_one(sign(g))).collect();
    AlgebraObject::new(fd, vec![1; r], mult, DVector::from_element(1, c(1.0)), Some(star))
}

/// `C[G]` with `e_g* = e_{g⁻¹}`.
pub fn group_algebra(fd: Arc<FusionData>) -> Result<AlgebraObject> {
    group_algebra_with(fd, |_, _| 1.0, |_| 1.0)
}

/// `C[G]` from a multiplication table, label 0 being the identity.
pub fn group_algebra_from_table(names: &[String], table: &[Vec<usize>]) -> Result<AlgebraObject> {
    group_algebra(Arc::new(FusionData::group(names, table)?))
}

/// `C[G]` with the star `e_g* = −e_{g⁻¹}` for `g ≠ e`. For `Z/2` all star axioms hold but the
/// result is not a C*-algebra object.
pub fn twisted_group_algebra(fd: Arc<FusionData>) -> Result<AlgebraObject> {
    let one = fd.unit();
    group_algebra_with(fd, |_, _| 1.0, move |g| if g == one { 1.0 } else { -1.0 })
}

/// Symmetric enveloping algebra over `C ⊠ C^mp`: `A(a ⊠ ā) = C` and every other fiber zero.
///
/// The product of the generators `1_a` and `1_b` along `γ ⊠ γ'` is `d_c⁻¹ conj(K[γ', γ])` with
/// `K` the vertex conjugation of `C(c, a⊗b)`; the star sends `1_a` to `1_ā`.
pub fn symmetric_enveloping(fd: &FusionData) -> Result<AlgebraObject> {
    let mirror = fd.mirror()?;
    let env = Arc::new(fd.deligne(&mirror)?);
    let r = fd.rank();
    let pair = |a: Label, b: Label| a * r + b;
    let mut dims = vec![0; env.rank()];
    for a in fd.labels() {
        dims[pair(a, fd.dual(a))] = 1;
    }
    let mut mult = BTreeMap::new();
    for a in fd.labels() {
        for b in fd.labels() {
            let (ab, bb) = (fd.dual(a), fd.dual(b));
            for cc in fd.fuse(a, b) {
                let cb = fd.dual(cc);
                let k = fd.vertex_conjugation(a, b, cc);
                let n2 = mirror.n(ab, bb, cb);
                for g1 in 0..fd.n(a, b, cc) {
                    for g2 in 0..n2 {
                        let z = k[(g2, g1)].conj() / fd.dim(cc);
                        if z.norm() == 0.0 {
                            continue;
                        }
                        let key = (pair(a, ab), pair(b, bb), pair(cc, cb), g1 * n2 + g2);
                        mult.insert(key, DMatrix::from_element(1, 1, z));
                    }
                }
            }
        }
    }
    let star = (0..env.rank())
        .map(|s| {
            let sb = env.dual(s);
            DMatrix::from_element(dims[sb], dims[s], c(1.0))
        })
        .collect();
    AlgebraObject::new(env, dims, mult, DVector::from_element(1, c(1.0)), Some(star))
}
