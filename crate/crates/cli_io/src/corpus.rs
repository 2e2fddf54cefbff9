//! The sample documents shipped in `data/`, built from the library constructors.

use std::path::Path;
use std::sync::Arc;

use algebra_objects::{group_algebra, trivial_algebra, twisted_group_algebra, AlgebraObject, BhAlgebra};
use category_core::linalg::c;
use category_core::{FusionData, C64};
use cp_multipliers::{Multiplier, QGMultiplier, Truncation};
use graded_spaces::GradedSpace;
use representations::{Gns, State};
use serde::Serialize;
use serde_json::Value;

use crate::canonical::{canonical_bytes, content_hash, matrices_doc, vector_doc, MatrixDoc};
use crate::docs::*;
use crate::{CliError, Result};

/// Documents in dependency order; each reference is a sibling file name.
pub struct Corpus {
    pub files: Vec<(String, Value)>,
}

impl Corpus {
    fn add<T: Serialize>(&mut self, name: &str, doc: &T) -> Result<DocRef> {
        let value = serde_json::to_value(doc).map_err(|e| CliError::Parse(e.to_string()))?;
        let sha256 = content_hash(&value)?;
        self.files.push((name.into(), value));
        Ok(DocRef { path: name.into(), sha256 })
    }

    fn category(&mut self, name: &str, fd: &FusionData) -> Result<DocRef> {
        self.add(name, &CategoryDoc::from_fusion(fd))
    }

    fn algebra(&mut self, name: &str, a: &AlgebraObject, cat: &DocRef) -> Result<DocRef> {
        self.add(name, &AlgebraDoc::from_algebra(a, cat.clone()))
    }

    fn multiplier(&mut self, name: &str, m: &Multiplier, source: &DocRef, target: Target, boundary: Vec<usize>) -> Result<DocRef> {
        let (format_version, kind) = new_header::<MultiplierDoc>();
        let (target, target_space) = match target {
            Target::Algebra(r) => (Some(r), None),
            Target::Space(g) => (None, Some(g)),
        };
        self.add(name, &MultiplierDoc { format_version, kind, source: source.clone(), target, target_space, maps: matrices_doc(&m.maps), boundary })
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    /// Writes every document in canonical form.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(e.to_string()))?;
        for (name, value) in &self.files {
            std::fs::write(dir.join(name), canonical_bytes(value)?).map_err(|e| CliError::Io(e.to_string()))?;
        }
        Ok(())
    }
}

enum Target {
    Algebra(DocRef),
    Space(Vec<MatrixDoc>),
}

fn scaled(a: &AlgebraObject, f: impl Fn(usize) -> f64) -> Result<Multiplier> {
    let factors: Vec<C64> = (0..a.fd().rank()).map(|s| c(f(s))).collect();
    Ok(Multiplier::scaling(a, &factors)?)
}

pub fn build() -> Result<Corpus> {
    let mut k = Corpus { files: Vec::new() };

    let trivial = FusionData::trivial();
    k.category("trivial.cat.json", &trivial)?;

    let z2 = Arc::new(FusionData::cyclic(2));
    let z2_ref = k.category("cz2.cat.json", &z2)?;
    let cz2 = group_algebra(z2.clone())?;
    let cz2_ref = k.algebra("cz2.alg.json", &cz2, &z2_ref)?;
    k.algebra("cz2_twisted.alg.json", &twisted_group_algebra(z2.clone())?, &z2_ref)?;

    // θ = (1, t) followed by the left regular representation on L²(C[Z/2]).
    let g2 = Gns::new(&State::regular_trace(&cz2)?)?;
    let lambda = Multiplier::from_representation(&g2.left)?;
    for (name, t) in [("cz2_half_l2.mult.json", 0.5), ("cz2_over_l2.mult.json", 1.5)] {
        let theta = lambda.compose(&scaled(&cz2, |s| if s == 0 { 1.0 } else { t })?)?;
        k.multiplier(name, &theta, &cz2_ref, Target::Space(matrices_doc(g2.l2.grams())), Vec::new())?;
    }
    for (name, t) in [("cz2_half.mult.json", 0.5), ("cz2_over.mult.json", 1.01)] {
        let theta = scaled(&cz2, |s| if s == 0 { 1.0 } else { t })?;
        k.multiplier(name, &theta, &cz2_ref, Target::Algebra(cz2_ref.clone()), Vec::new())?;
        let q = QGMultiplier::pointed(z2.clone(), &[c(1.0), c(t)])?;
        let (format_version, kind) = new_header::<QgMultiplierDoc>();
        let f = &q.functor;
        let doc = QgMultiplierDoc {
            format_version,
            kind,
            category: z2_ref.clone(),
            dims: f.dims.clone(),
            vertices: f.vertices.iter().map(|(&(a, b, cc, al), m)| VertexDoc { key: [a, b, cc, al], matrix: MatrixDoc::from_matrix(m) }).collect(),
            evs: f.evs.iter().map(vector_doc).collect(),
            phi: matrices_doc(&q.phi),
            cutoff: q.cutoff.clone(),
        };
        k.add(&name.replace(".mult.", ".qg."), &doc)?;
    }

    let z3 = Arc::new(FusionData::cyclic(3));
    let z3_ref = k.category("cz3.cat.json", &z3)?;
    let cz3 = group_algebra(z3)?;
    let cz3_ref = k.algebra("cz3.alg.json", &cz3, &z3_ref)?;
    let tr3 = State::regular_trace(&cz3)?;
    let (format_version, kind) = new_header::<StateDoc>();
    k.add("cz3_trace.state.json", &StateDoc { format_version, kind, algebra: cz3_ref.clone(), functional: vector_doc(&tr3.functional) })?;
    let g3 = Gns::new(&tr3)?;
    let (format_version, kind) = new_header::<RepresentationDoc>();
    k.add(
        "cz3_l2.rep.json",
        &RepresentationDoc { format_version, kind, algebra: cz3_ref, space: matrices_doc(g3.l2.grams()), maps: matrices_doc(&g3.left.maps) },
    )?;

    let fib = Arc::new(FusionData::fibonacci());
    let fib_ref = k.category("fibonacci.cat.json", &fib)?;
    k.algebra("fib_trivial.alg.json", &trivial_algebra(fib.clone()), &fib_ref)?;
    let bh = BhAlgebra::new(&GradedSpace::with_dims(fib, &[1, 1]))?;
    k.algebra("fib_bh.alg.json", &bh.algebra, &fib_ref)?;

    // A width-2 truncation of C[Z] with Ψ_n = 0.5^|n| and its finitely supported cut-offs.
    let trunc = Truncation::integers(2);
    let z5_ref = k.category("z_width2.cat.json", &trunc.fd)?;
    let cz5 = group_algebra(trunc.fd.clone())?;
    let cz5_ref = k.algebra("z_width2.alg.json", &cz5, &z5_ref)?;
    let n = |s: usize| trunc.integer(s).expect("integer truncation").abs();
    let psi = scaled(&cz5, |s| 0.5f64.powi(n(s) as i32))?;
    k.multiplier("z_width2_geometric.mult.json", &psi, &cz5_ref, Target::Algebra(cz5_ref.clone()), trunc.boundary.clone())?;
    for cut in 0..=2 {
        let m = scaled(&cz5, |s| if n(s) <= cut { 0.5f64.powi(n(s) as i32) } else { 0.0 })?;
        k.multiplier(&format!("z_width2_cut{cut}.mult.json"), &m, &cz5_ref, Target::Algebra(cz5_ref.clone()), trunc.boundary.clone())?;
    }
    Ok(k)
}
