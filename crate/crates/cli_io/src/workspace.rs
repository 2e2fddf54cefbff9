//! Loading documents and resolving their references.

use std::collections::BTreeMap;
use std::path::{Component, Path, PathBuf};
use std::sync::Arc;

use algebra_objects::{AlgebraObject, BhAlgebra};
use category_core::{FusionData, Label};
use cp_multipliers::{FiberFunctor, Multiplier, QGMultiplier};
use representations::{Representation, State};
use serde_json::Value;

use crate::canonical::{content_hash, matrices_from, vector_from};
use crate::docs::*;
use crate::{CliError, Result};

/// A parsed document with its location and content hash.
#[derive(Clone, Debug)]
pub struct Loaded<D> {
    pub doc: D,
    pub path: PathBuf,
    pub hash: String,
}

impl<D> Loaded<D> {
    pub fn reference(&self) -> DocRef {
        DocRef { path: self.path.display().to_string(), sha256: self.hash.clone() }
    }
}

/// A multiplier document together with the `B(H)` it lands in, when it has one.
pub struct LoadedMultiplier {
    pub multiplier: Multiplier,
    pub target_bh: Option<BhAlgebra>,
    pub boundary: Vec<Label>,
    pub reference: DocRef,
}

/// Documents under a root directory, keyed by content hash.
///
/// A reference is followed through its path, relative to the referencing file; if that file is
/// missing, the root directory is searched recursively for a document with the referenced hash. A file whose
/// hash differs from the reference is rejected.
#[derive(Debug)]
pub struct Workspace {
    pub root: PathBuf,
    /// Overrides the tolerance stored in category documents.
    pub tolerance: Option<f64>,
    values: BTreeMap<String, (PathBuf, Value)>,
    categories: BTreeMap<String, Arc<FusionData>>,
    algebras: BTreeMap<String, AlgebraObject>,
    index: Option<BTreeMap<String, PathBuf>>,
}

impl Workspace {
    pub fn new(root: impl Into<PathBuf>, tolerance: Option<f64>) -> Self {
        Workspace { root: root.into(), tolerance, values: BTreeMap::new(), categories: BTreeMap::new(), algebras: BTreeMap::new(), index: None }
    }

    fn read_value(&mut self, path: &Path) -> Result<(String, Value)> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_slice(&bytes).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let hash = content_hash(&value)?;
        self.values.insert(hash.clone(), (path.to_path_buf(), value.clone()));
        Ok((hash, value))
    }

    /// The `kind` field of a document.
    pub fn kind(&mut self, path: &Path) -> Result<String> {
        let (_, v) = self.read_value(path)?;
        v.get("kind").and_then(Value::as_str).map(str::to_string).ok_or_else(|| CliError::Schema(format!("{}: missing `kind`", path.display())))
    }

    pub fn read<D: Document>(&mut self, path: &Path) -> Result<Loaded<D>> {
        let (hash, value) = self.read_value(path)?;
        let doc: D = serde_json::from_value(value).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
        check_header(&doc)?;
        Ok(Loaded { doc, path: path.to_path_buf(), hash })
    }

    fn build_index(&mut self) -> Result<&BTreeMap<String, PathBuf>> {
        if self.index.is_none() {
            let mut index = BTreeMap::new();
            let mut paths = Vec::new();
            for entry in walkdir::WalkDir::new(&self.root).sort_by_file_name() {
                let entry = entry.map_err(|e| CliError::Io(format!("{}: {e}", self.root.display())))?;
                if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "json") {
                    paths.push(entry.into_path());
                }
            }
            for p in paths {
                if let Ok((hash, _)) = self.read_value(&p) {
                    index.entry(hash).or_insert(p);
                }
            }
            self.index = Some(index);
        }
        Ok(self.index.as_ref().expect("index built"))
    }

    /// The file a reference in `from` points to, after checking its hash.
    pub fn resolve_ref(&mut self, from: &Path, r: &DocRef) -> Result<PathBuf> {
        let base = from.parent().unwrap_or(Path::new("."));
        let candidate = base.join(&r.path);
        if candidate.is_file() {
            let (hash, _) = self.read_value(&candidate)?;
            if hash != r.sha256 {
                return Err(CliError::HashMismatch { path: candidate.display().to_string(), expected: r.sha256.clone(), found: hash });
            }
            return Ok(candidate);
        }
        self.build_index()?
            .get(&r.sha256)
            .cloned()
            .ok_or_else(|| CliError::Unresolved(format!("{} (sha256 {})", r.path, r.sha256)))
    }

    fn category_at(&mut self, path: &Path) -> Result<(Arc<FusionData>, String)> {
        let loaded = self.read::<CategoryDoc>(path)?;
        if let Some(fd) = self.categories.get(&loaded.hash) {
            return Ok((fd.clone(), loaded.hash));
        }
        let fd = Arc::new(loaded.doc.to_fusion(self.tolerance)?);
        self.categories.insert(loaded.hash.clone(), fd.clone());
        Ok((fd, loaded.hash))
    }

    pub fn load_category(&mut self, path: &Path) -> Result<(Arc<FusionData>, DocRef)> {
        let (fd, hash) = self.category_at(path)?;
        Ok((fd, DocRef { path: path.display().to_string(), sha256: hash }))
    }

    pub fn category_ref(&mut self, from: &Path, r: &DocRef) -> Result<Arc<FusionData>> {
        let p = self.resolve_ref(from, r)?;
        Ok(self.category_at(&p)?.0)
    }

    fn algebra_at(&mut self, path: &Path) -> Result<(AlgebraObject, String)> {
        let loaded = self.read::<AlgebraDoc>(path)?;
        if let Some(a) = self.algebras.get(&loaded.hash) {
            return Ok((a.clone(), loaded.hash));
        }
        let fd = self.category_ref(path, &loaded.doc.category)?;
        let a = loaded.doc.to_algebra(fd)?;
        self.algebras.insert(loaded.hash.clone(), a.clone());
        Ok((a, loaded.hash))
    }

    pub fn load_algebra(&mut self, path: &Path) -> Result<(AlgebraObject, DocRef)> {
        let (a, hash) = self.algebra_at(path)?;
        Ok((a, DocRef { path: path.display().to_string(), sha256: hash }))
    }

    pub fn algebra_ref(&mut self, from: &Path, r: &DocRef) -> Result<AlgebraObject> {
        let p = self.resolve_ref(from, r)?;
        Ok(self.algebra_at(&p)?.0)
    }

    pub fn load_state(&mut self, path: &Path) -> Result<(State, DocRef)> {
        let loaded = self.read::<StateDoc>(path)?;
        let a = self.algebra_ref(path, &loaded.doc.algebra)?;
        Ok((State::new(&a, vector_from(&loaded.doc.functional))?, loaded.reference()))
    }

    pub fn load_representation(&mut self, path: &Path) -> Result<(Representation, DocRef)> {
        let loaded = self.read::<RepresentationDoc>(path)?;
        let a = self.algebra_ref(path, &loaded.doc.algebra)?;
        let h = space_from(a.fd().clone(), &loaded.doc.space)?;
        let bh = BhAlgebra::new(&h)?;
        Ok((Representation::new(&a, bh, matrices_from(&loaded.doc.maps)?)?, loaded.reference()))
    }

    pub fn load_multiplier(&mut self, path: &Path) -> Result<LoadedMultiplier> {
        let loaded = self.read::<MultiplierDoc>(path)?;
        let doc = &loaded.doc;
        let source = self.algebra_ref(path, &doc.source)?;
        let maps = matrices_from(&doc.maps)?;
        let (multiplier, target_bh) = match (&doc.target, &doc.target_space) {
            (Some(t), None) => {
                let target = self.algebra_ref(path, t)?;
                (Multiplier::new(&source, &target, maps)?, None)
            }
            (None, Some(grams)) => {
                let bh = BhAlgebra::new(&space_from(source.fd().clone(), grams)?)?;
                let m = Multiplier::new(&source, &bh.algebra, maps)?.with_target_representation(Representation::identity(&bh))?;
                (m, Some(bh))
            }
            _ => return Err(CliError::Schema("a multiplier names exactly one of `target` and `target_space`".into())),
        };
        if doc.boundary.iter().any(|&b| b >= source.fd().rank()) {
            return Err(CliError::Schema("boundary label out of range".into()));
        }
        Ok(LoadedMultiplier { multiplier, target_bh, boundary: doc.boundary.clone(), reference: loaded.reference() })
    }

    pub fn load_qg_multiplier(&mut self, path: &Path) -> Result<(QGMultiplier, DocRef)> {
        let loaded = self.read::<QgMultiplierDoc>(path)?;
        let doc = &loaded.doc;
        let fd = self.category_ref(path, &doc.category)?;
        let mut vertices = BTreeMap::new();
        for v in &doc.vertices {
            vertices.insert((v.key[0], v.key[1], v.key[2], v.key[3]), v.matrix.to_matrix()?);
        }
        let evs = doc.evs.iter().map(|e| vector_from(e)).collect();
        let functor = FiberFunctor { fd, dims: doc.dims.clone(), vertices, evs };
        Ok((QGMultiplier::new(functor, matrices_from(&doc.phi)?, doc.cutoff.clone())?, loaded.reference()))
    }
}

/// `target` as seen from `dir`, for references written into a document stored in `dir`.
pub fn relative_path(target: &Path, dir: &Path) -> String {
    let abs = |p: &Path| std::fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf());
    let (t, d) = (abs(target), abs(dir));
    let tc: Vec<Component> = t.components().collect();
    let dc: Vec<Component> = d.components().collect();
    let common = tc.iter().zip(&dc).take_while(|(a, b)| a == b).count();
    let mut out = PathBuf::new();
    for _ in common..dc.len() {
        out.push("..");
    }
    for c in &tc[common..] {
        out.push(c);
    }
    out.display().to_string()
}
