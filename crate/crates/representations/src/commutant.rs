//! Commutants and bicommutants of represented algebra objects, solved as nullspaces.
//!
//! The commutant at `(c, d)` consists of the maps `g : H⊗c → H⊗d` with
//! `g ∘ (π(x) ⊗ 1_c) = (π(x) ⊗ 1_d) ∘ (1_s ⊗ g)` for every generator `x ∈ A(s)`.
//! The bicommutant at `(a, b)` consists of the maps `h : a⊗H → b⊗H` commuting in the same
//! sense with every commutant element. In finite dimensions the weak* closure of the
//! represented algebra is its linear span, so the bicommutant is compared with that span.

use std::collections::BTreeMap;

use category_core::linalg::{c, nullspace, range_basis};
use category_core::{Check, DMatrix, DVector, Label, Object, Report, C64};
use graded_spaces::{FiberMap, Sandwich};

use crate::representation::unit_vector;
use crate::{Representation, Result};

/// Spanning vectors `x ∈ A(s)` used as generators.
pub type Generators = Vec<(Label, DVector<C64>)>;

/// Every basis vector of every supported fiber.
pub fn all_generators(rep: &Representation) -> Generators {
    let a = &rep.algebra;
    a.support().into_iter().flat_map(|s| (0..a.dim(s)).map(move |k| (s, unit_vector(a.dim(s), k)))).collect()
}

/// A solution space of maps between two sandwiched spaces.
#[derive(Clone, Debug)]
pub struct HomSolution {
    pub src: Sandwich,
    pub tgt: Sandwich,
    pub basis: Vec<FiberMap>,
}

impl HomSolution {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthonormal coordinates of the space, one column per basis vector.
    pub fn frame(&self) -> DMatrix<C64> {
        columns(&self.basis.iter().map(FiberMap::flatten).collect::<Vec<_>>(), FiberMap::coordinate_count(&self.src.space, &self.tgt.space))
    }
}

#[derive(Clone, Debug)]
pub struct CommutantResult {
    /// `spaces[(c, d)]` spans maps `H⊗c → H⊗d`.
    pub spaces: BTreeMap<(Label, Label), HomSolution>,
    pub threshold: f64,
}

impl CommutantResult {
    pub fn hom_dims(&self) -> BTreeMap<(Label, Label), usize> {
        self.spaces.iter().map(|(&k, v)| (k, v.dim())).collect()
    }

    /// `dim M'(s, 1)` for each label `s`.
    pub fn fiber_dims(&self, unit: Label) -> Vec<usize> {
        let r = self.spaces.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        (0..r).map(|s| self.spaces.get(&(s, unit)).map_or(0, HomSolution::dim)).collect()
    }
}

pub fn commutant(rep: &Representation) -> Result<CommutantResult> {
    commutant_of(rep, &all_generators(rep))
}

/// Commutant of the maps `π(x)` for the given generators, at every pair of simples.
pub fn commutant_of(rep: &Representation, gens: &Generators) -> Result<CommutantResult> {
    let fd = rep.algebra.fd();
    let h = rep.space();
    let threshold = fd.tolerance().sqrt();
    let mut spaces = BTreeMap::new();
    for cc in 0..fd.rank() {
        for d in 0..fd.rank() {
            let src = Sandwich::new(h, &[], &[cc]);
            let tgt = Sandwich::new(h, &[], &[d]);
            let n = FiberMap::coordinate_count(&src.space, &tgt.space);
            let mut rows: Vec<DMatrix<C64>> = Vec::new();
            let mut ext_cache: BTreeMap<Label, DMatrix<C64>> = BTreeMap::new();
            for (s, x) in gens {
                let (_, _, lc) = rep.left_action(*s, x, &[cc])?;
                let (_, _, ld) = rep.left_action(*s, x, &[d])?;
                if !ext_cache.contains_key(s) {
                    ext_cache.insert(*s, extension_matrix(&[*s], &src, &tgt, true)?.2);
                }
                let ext = &ext_cache[s];
                let ext_src = Sandwich::new(h, &[*s], &[cc]);
                let ext_tgt = Sandwich::new(h, &[*s], &[d]);
                let mut block = DMatrix::zeros(0, n);
                for k in 0..n {
                    let g = FiberMap::unflatten(&src.space, &tgt.space, &unit_vector(n, k));
                    let eg = FiberMap::unflatten(&ext_src.space, &ext_tgt.space, &ext.column(k).into_owned());
                    let diff = g.compose(&lc)?.add(&ld.compose(&eg)?.scale(c(-1.0)))?.flatten();
                    if block.nrows() == 0 {
                        block = DMatrix::zeros(diff.len(), n);
                    }
                    block.set_column(k, &diff);
                }
                rows.push(block);
            }
            let system = stack(&rows, n);
            let null = nullspace(&system, threshold);
            let basis = (0..null.ncols()).map(|k| FiberMap::unflatten(&src.space, &tgt.space, &null.column(k).into_owned())).collect();
            spaces.insert((cc, d), HomSolution { src, tgt, basis });
        }
    }
    Ok(CommutantResult { spaces, threshold })
}

/// Residuals of the commutation equations, `*`-closure and closure under composition.
pub fn commutant_report(rep: &Representation, result: &CommutantResult) -> Result<Report> {
    let fd = rep.algebra.fd();
    let tol = fd.tolerance().sqrt();
    let mut commute = 0.0f64;
    for (&(cc, d), sol) in &result.spaces {
        for (s, x) in all_generators(rep) {
            let (_, _, lc) = rep.left_action(s, &x, &[cc])?;
            let (_, _, ld) = rep.left_action(s, &x, &[d])?;
            for g in &sol.basis {
                let (_, _, eg) = Sandwich::extend(&[s], g, &sol.src, &sol.tgt, true)?;
                commute = commute.max(g.compose(&lc)?.distance(&ld.compose(&eg)?));
            }
        }
    }
    let mut star = 0.0f64;
    for (&(cc, d), sol) in &result.spaces {
        let back = result.spaces[&(d, cc)].frame();
        for g in &sol.basis {
            star = star.max(residual_outside(&g.adjoint().flatten(), &back));
        }
    }
    let mut comp = 0.0f64;
    let r = fd.rank();
    for b in 0..r {
        for cc in 0..r {
            for d in 0..r {
                let target = result.spaces[&(b, d)].frame();
                for f in &result.spaces[&(b, cc)].basis {
                    for g in &result.spaces[&(cc, d)].basis {
                        comp = comp.max(residual_outside(&g.compose(f)?.flatten(), &target));
                    }
                }
            }
        }
    }
    let mut report = Report::default();
    report.push(Check::new("commutes_with_generators", commute, tol));
    report.push(Check::new("star_closed", star, tol));
    report.push(Check::new("composition_closed", comp, tol));
    Ok(report)
}

/// Bicommutant against the span of the represented module morphisms, at every pair of simples.
#[derive(Clone, Debug)]
pub struct BicommutantReport {
    /// `(a, b) ↦ (dim M''(a, b), dim span π(M_A(a, b)))`.
    pub dims: BTreeMap<(Label, Label), (usize, usize)>,
    /// Largest distance of a represented morphism from the bicommutant.
    pub containment: f64,
    /// Pairs where the bicommutant is strictly larger than the span.
    pub growth: Vec<(Label, Label)>,
    pub report: Report,
}

pub fn bicommutant_check(rep: &Representation) -> Result<BicommutantReport> {
    bicommutant_check_with(rep, &all_generators(rep))
}

/// As [`bicommutant_check`], with the commutant and the span taken over `gens` only.
pub fn bicommutant_check_with(rep: &Representation, gens: &Generators) -> Result<BicommutantReport> {
    let fd = rep.algebra.fd().clone();
    let h = rep.space();
    let comm = commutant_of(rep, gens)?;
    let threshold = comm.threshold;
    let r = fd.rank();
    let mut dims = BTreeMap::new();
    let mut containment = 0.0f64;
    let mut growth = Vec::new();
    for a in 0..r {
        for b in 0..r {
            let src = Sandwich::new(h, &[a], &[]);
            let tgt = Sandwich::new(h, &[b], &[]);
            let n = FiberMap::coordinate_count(&src.space, &tgt.space);
            let mut rows = Vec::new();
            for (&(cc, d), sol) in &comm.spaces {
                if sol.basis.is_empty() {
                    continue;
                }
                let (hsrc_c, htgt_c, ext_c) = extension_matrix(&[cc], &src, &tgt, false)?;
                let (hsrc_d, htgt_d, ext_d) = extension_matrix(&[d], &src, &tgt, false)?;
                for g in &sol.basis {
                    let (_, _, ga) = Sandwich::extend(&[a], g, &sol.src, &sol.tgt, true)?;
                    let (_, _, gb) = Sandwich::extend(&[b], g, &sol.src, &sol.tgt, true)?;
                    let mut block = DMatrix::zeros(0, n);
                    for k in 0..n {
                        let hd = FiberMap::unflatten(&hsrc_d.space, &htgt_d.space, &ext_d.column(k).into_owned());
                        let hc = FiberMap::unflatten(&hsrc_c.space, &htgt_c.space, &ext_c.column(k).into_owned());
                        let diff = hd.compose(&ga)?.add(&gb.compose(&hc)?.scale(c(-1.0)))?.flatten();
                        if block.nrows() == 0 {
                            block = DMatrix::zeros(diff.len(), n);
                        }
                        block.set_column(k, &diff);
                    }
                    rows.push(block);
                }
            }
            let null = nullspace(&stack(&rows, n), threshold);
            let span = represented_span(rep, gens, a, b)?;
            let frame = range_basis(&span, threshold);
            for k in 0..span.ncols() {
                containment = containment.max(residual_outside(&span.column(k).into_owned(), &null));
            }
            if null.ncols() > frame.ncols() {
                growth.push((a, b));
            }
            dims.insert((a, b), (null.ncols(), frame.ncols()));
        }
    }
    let mismatch = dims.values().filter(|(x, y)| x != y).count() as f64;
    let mut report = Report::default();
    report.push(Check::new("bicommutant_dims_equal_span", mismatch, 0.0));
    report.push(Check::new("span_contained_in_bicommutant", containment, fd.tolerance()));
    Ok(BicommutantReport { dims, containment, growth, report })
}

/// Columns `Φ(μ ⊗ x)` for every vertex `μ ∈ C(a, b⊗s)` and generator `x ∈ A(s)`.
fn represented_span(rep: &Representation, gens: &Generators, a: Label, b: Label) -> Result<DMatrix<C64>> {
    let alg = &rep.algebra;
    let r = alg.fd().rank();
    let basis = alg.module_hom_space(&Object::simple(r, a), &Object::simple(r, b));
    let h = rep.space();
    let n = FiberMap::coordinate_count(&Sandwich::new(h, &[a], &[]).space, &Sandwich::new(h, &[b], &[]).space);
    let mut cols = Vec::new();
    for blk in &basis.blocks {
        for (_, x) in gens.iter().filter(|(s, _)| *s == blk.s) {
            let mut f = algebra_objects::ModuleHom::zero(&basis);
            f.coords.rows_mut(blk.offset, blk.len).copy_from(x);
            let (_, _, m) = rep.realize(&f)?;
            cols.push(m.flatten());
        }
    }
    Ok(DMatrix::from_fn(n, cols.len(), |i, k| cols[k][i]))
}

/// Matrix of `f ↦ 1_Z ⊗ f` (or `f ⊗ 1_Z`) on flattened coordinates.
pub fn extension_matrix(z: &[Label], src: &Sandwich, tgt: &Sandwich, left: bool) -> Result<(Sandwich, Sandwich, DMatrix<C64>)> {
    let n = FiberMap::coordinate_count(&src.space, &tgt.space);
    let (nsrc, ntgt) = {
        let zero = FiberMap::zero(&src.space, &tgt.space);
        let (a, b, _) = Sandwich::extend(z, &zero, src, tgt, left)?;
        (a, b)
    };
    let m = FiberMap::coordinate_count(&nsrc.space, &ntgt.space);
    let mut out = DMatrix::zeros(m, n);
    for k in 0..n {
        let f = FiberMap::unflatten(&src.space, &tgt.space, &unit_vector(n, k));
        let (_, _, e) = Sandwich::extend(z, &f, src, tgt, left)?;
        out.set_column(k, &e.flatten());
    }
    Ok((nsrc, ntgt, out))
}

fn stack(rows: &[DMatrix<C64>], n: usize) -> DMatrix<C64> {
    let total: usize = rows.iter().map(|r| r.nrows()).sum();
    let mut out = DMatrix::zeros(total, n);
    let mut at = 0;
    for r in rows {
        out.view_mut((at, 0), (r.nrows(), n)).copy_from(r);
        at += r.nrows();
    }
    out
}

pub(crate) fn columns(vs: &[DVector<C64>], n: usize) -> DMatrix<C64> {
    let m = DMatrix::from_fn(n, vs.len(), |i, k| vs[k][i]);
    range_basis(&m, 1e-12)
}

/// Distance of `v` from the span of the orthonormal columns of `frame`, relative to `max(‖v‖, 1)`.
pub fn residual_outside(v: &DVector<C64>, frame: &DMatrix<C64>) -> f64 {
    let scale = v.norm().max(1.0);
    if frame.ncols() == 0 {
        return v.norm() / scale;
    }
    let p = frame * (frame.adjoint() * v);
    (v - p).norm() / scale
}
