//! The subcommands, as library functions returning a report and the documents they emit.

use std::path::{Path, PathBuf};
use std::time::Instant;

use algebra_objects::AlgebraObject;
use category_core::{FusionData, Label, Object};
use cp_multipliers::{classify_multiplier, convergence_probe, qg_state_check, qg_state_check_with, stinespring, CpError, Truncation};
use graded_spaces::GradedSpace;
use representations::{bicommutant_check, commutant, commutant_report, gelfand_naimark, modular_conjugation, Gns, Representation, State};
use serde::Serialize;
use serde_json::Value;

use crate::canonical::{canonical_bytes, content_hash, matrices_doc, vector_doc, FORMAT_VERSION};
use crate::docs::*;
use crate::report::CliReport;
use crate::workspace::{relative_path, Workspace};
use crate::{CliError, Result};

#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub seed: u64,
    /// Directory for emitted documents; nothing is written when absent.
    pub out: Option<PathBuf>,
}

/// A command's report and the documents it produced, as `(file name, document)`.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: CliReport,
    pub documents: Vec<(String, Value)>,
}

impl Outcome {
    fn new(report: CliReport) -> Self {
        Outcome { report, documents: Vec::new() }
    }

    fn emit<T: Serialize>(&mut self, name: &str, doc: &T) -> Result<()> {
        let value = serde_json::to_value(doc).map_err(|e| CliError::Parse(e.to_string()))?;
        let hash = content_hash(&value)?;
        self.report.outputs.push(DocRef { path: name.into(), sha256: hash });
        self.documents.push((name.into(), value));
        Ok(())
    }

    /// Writes the documents into `dir` in canonical form.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        for (name, value) in &self.documents {
            let path = dir.join(name);
            std::fs::write(&path, canonical_bytes(value)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }
}

fn timed(start: Instant, mut out: Outcome) -> Outcome {
    out.report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    out
}

/// A reference to the input at `path`, as seen from the output directory.
fn ref_from_out(settings: &Settings, path: &Path, sha256: &str) -> DocRef {
    let dir = settings.out.clone().unwrap_or_else(|| PathBuf::from("."));
    DocRef { path: relative_path(path, &dir), sha256: sha256.into() }
}

fn names(fd: &FusionData, labels: &[Label]) -> Vec<String> {
    labels.iter().map(|&s| fd.name(s).to_string()).collect()
}

fn grams_doc(h: &GradedSpace) -> Vec<crate::canonical::MatrixDoc> {
    matrices_doc(h.grams())
}

fn representation_doc(rep: &Representation, algebra: DocRef) -> RepresentationDoc {
    let (format_version, kind) = new_header::<RepresentationDoc>();
    RepresentationDoc { format_version, kind, algebra, space: grams_doc(rep.space()), maps: matrices_doc(&rep.maps) }
}

fn space_doc(h: &GradedSpace, category: DocRef) -> GradedSpaceDoc {
    let (format_version, kind) = new_header::<GradedSpaceDoc>();
    GradedSpaceDoc { format_version, kind, category, grams: grams_doc(h) }
}

/// Path and hash of the category behind an algebra document.
fn algebra_category(ws: &mut Workspace, algebra: &Path) -> Result<(PathBuf, String)> {
    let doc = ws.read::<AlgebraDoc>(algebra)?.doc;
    let p = ws.resolve_ref(algebra, &doc.category)?;
    Ok((p, doc.category.sha256))
}

pub fn cmd_validate(ws: &mut Workspace, settings: &Settings, path: &Path) -> Result<Outcome> {
    let start = Instant::now();
    let (fd, r) = ws.load_category(path)?;
    let mut report = CliReport::new("validate", settings.seed, fd.tolerance());
    report.inputs.push(r);
    report.absorb(&fd.validate(settings.seed));
    report.table("simples", fd.names());
    report.table("dims", fd.dims());
    Ok(timed(start, Outcome::new(report)))
}

pub fn cmd_algebra(ws: &mut Workspace, settings: &Settings, path: &Path, star: bool, cstar: bool, expectations: bool) -> Result<Outcome> {
    let start = Instant::now();
    let (a, r) = ws.load_algebra(path)?;
    let fd = a.fd().clone();
    let mut report = CliReport::new("algebra", settings.seed, fd.tolerance());
    report.inputs.push(r);
    report.table("fibers", a.dims());
    if cstar {
        let res = a.is_cstar()?;
        report.absorb(&res.report);
        report.table("cstar", res.is_cstar);
        report.table("witness_fibers", names(&fd, &res.witness_labels));
    } else {
        report.absorb(&a.check_algebra_axioms());
        if star {
            if a.has_star() {
                report.absorb(&a.check_star_axioms()?);
            } else {
                report.flag("has_star", false);
            }
        }
    }
    if expectations {
        for s in a.support() {
            let chk = a.expectation_index_check(s, &Object::simple(fd.rank(), s), 100, settings.seed, 1.0)?;
            let mut named = chk.report.clone();
            for c in &mut named.checks {
                c.name = format!("{}[{}]", c.name, fd.name(s));
            }
            report.absorb(&named);
        }
    }
    Ok(timed(start, Outcome::new(report)))
}

pub fn cmd_gns(ws: &mut Workspace, settings: &Settings, algebra: &Path, state: &Path) -> Result<Outcome> {
    let start = Instant::now();
    let (a, ar) = ws.load_algebra(algebra)?;
    let (st, sr) = ws.load_state(state)?;
    if st.algebra.dims() != a.dims() || !std::sync::Arc::ptr_eq(st.algebra.fd(), a.fd()) {
        return Err(CliError::Schema("the state is not on the given algebra".into()));
    }
    let mut report = CliReport::new("gns", settings.seed, a.fd().tolerance());
    report.inputs.extend([ar.clone(), sr]);
    report.flag("is_state", st.is_state);
    report.table("is_trace", st.is_trace);
    report.table("is_faithful", st.is_faithful);
    let mut out = Outcome::new(report);
    if !st.is_state {
        return Ok(timed(start, out));
    }
    let g = Gns::new(&st)?;
    out.report.absorb(&g.left.check()?);
    out.report.table("l2_dims", g.l2.dims());
    let (cat_path, cat_hash) = algebra_category(ws, algebra)?;
    out.emit("l2.space.json", &space_doc(&g.l2, ref_from_out(settings, &cat_path, &cat_hash)))?;
    out.emit("gns.rep.json", &representation_doc(&g.left, ref_from_out(settings, algebra, &ar.sha256)))?;
    Ok(timed(start, out))
}

pub fn cmd_embed(ws: &mut Workspace, settings: &Settings, algebra: &Path) -> Result<Outcome> {
    let start = Instant::now();
    let (a, ar) = ws.load_algebra(algebra)?;
    let fd = a.fd().clone();
    let mut report = CliReport::new("embed", settings.seed, fd.tolerance());
    report.inputs.push(ar.clone());
    let emb = gelfand_naimark(&a)?;
    let iso = emb.isometry_check(&Object::all_simples(fd.rank()), 200, settings.seed, fd.tolerance().max(1e-8))?;
    report.absorb(&emb.gns.left.check()?);
    report.absorb(&iso.report);
    report.table("max_gap", iso.max_gap);
    report.table("space_dims", emb.gns.l2.dims());
    let mut out = Outcome::new(report);
    out.emit("embedding.rep.json", &representation_doc(&emb.gns.left, ref_from_out(settings, algebra, &ar.sha256)))?;
    Ok(timed(start, out))
}

pub fn cmd_stinespring(ws: &mut Workspace, settings: &Settings, path: &Path) -> Result<Outcome> {
    let start = Instant::now();
    let lm = ws.load_multiplier(path)?;
    let theta = &lm.multiplier;
    let fd = theta.source.fd().clone();
    let mut report = CliReport::new("stinespring", settings.seed, fd.tolerance());
    report.inputs.push(lm.reference.clone());
    let bh = lm.target_bh.as_ref().ok_or_else(|| CliError::Unsupported("stinespring needs a multiplier into B(H) (`target_space`)".into()))?;
    let mut out = Outcome::new(report);
    match stinespring(theta, bh) {
        Ok(d) => {
            out.report.absorb(&d.report);
            out.report.table("k_dims", d.dims());
            let mdoc = ws.read::<MultiplierDoc>(path)?.doc;
            let src_path = ws.resolve_ref(path, &mdoc.source)?;
            let (cat_path, cat_hash) = algebra_category(ws, &src_path)?;
            let cat = ref_from_out(settings, &cat_path, &cat_hash);
            out.emit("dilation.space.json", &space_doc(&d.k, cat.clone()))?;
            out.emit("dilation.rep.json", &representation_doc(&d.pi, ref_from_out(settings, &src_path, &mdoc.source.sha256)))?;
            out.emit("dilation.isometry.json", &FiberMapDoc::from_map(&d.v, cat))?;
        }
        Err(CpError::NotPositive { label, eigenvalue, witness }) => {
            out.report.absorb(&{
                let mut r = category_core::Report::default();
                r.push(category_core::Check::lower_bound("form_positive", eigenvalue, fd.tolerance()));
                r.witness("form_positive", format!("negative direction in fiber {}", fd.name(label)), witness);
                r
            });
        }
        Err(CpError::NotUnital(res)) => {
            out.report.absorb(&{
                let mut r = category_core::Report::default();
                r.push(category_core::Check::new("unital", res, fd.tolerance()));
                r
            });
        }
        Err(e) => return Err(e.into()),
    }
    Ok(timed(start, out))
}

pub fn cmd_commutant(
    ws: &mut Workspace,
    settings: &Settings,
    path: &Path,
    bicommutant: bool,
    modular: bool,
    trace: Option<&Path>,
) -> Result<Outcome> {
    let start = Instant::now();
    let (rep, rr) = ws.load_representation(path)?;
    let fd = rep.algebra.fd().clone();
    let mut report = CliReport::new("commutant", settings.seed, fd.tolerance());
    report.inputs.push(rr.clone());
    let comm = commutant(&rep)?;
    report.absorb(&commutant_report(&rep, &comm)?);
    let hom_dims: Vec<[usize; 3]> = comm.hom_dims().iter().map(|(&(c, d), &n)| [c, d, n]).collect();
    report.table("hom_dims", &hom_dims);
    report.table("algebra_dims", rep.algebra.dims());
    let mut bic = None;
    if bicommutant {
        let b = bicommutant_check(&rep)?;
        report.absorb(&b.report);
        let dims: Vec<[usize; 4]> = b.dims.iter().map(|(&(x, y), &(m, s))| [x, y, m, s]).collect();
        report.table("bicommutant_dims", &dims);
        bic = Some(dims);
    }
    if modular {
        let st = match trace {
            Some(p) => {
                let (st, sr) = ws.load_state(p)?;
                report.inputs.push(sr);
                st
            }
            None => State::regular_trace(&rep.algebra)?,
        };
        let g = Gns::new(&st)?;
        report.absorb(&modular_conjugation(&g)?.report);
    }
    let (format_version, kind) = new_header::<CommutantDoc>();
    let bases = comm.spaces.values().map(|sol| sol.basis.iter().map(|f| vector_doc(&f.flatten())).collect()).collect();
    let doc = CommutantDoc { format_version, kind, representation: ref_from_out(settings, path, &rr.sha256), hom_dims, bases, bicommutant: bic };
    let mut out = Outcome::new(report);
    out.emit("commutant.json", &doc)?;
    Ok(timed(start, out))
}

#[derive(Clone, Debug, Default)]
pub struct MultiplierOptions {
    pub classify: Option<f64>,
    pub net: Vec<PathBuf>,
    pub window: Option<Vec<Label>>,
    /// Group algebra for the cross-check of a quantum-group multiplier.
    pub algebra: Option<PathBuf>,
}

pub fn cmd_multiplier(ws: &mut Workspace, settings: &Settings, path: &Path, opts: &MultiplierOptions) -> Result<Outcome> {
    let start = Instant::now();
    match ws.kind(path)?.as_str() {
        "multiplier" => {}
        "qg_multiplier" => return cmd_qg_multiplier(ws, settings, path, opts.algebra.as_deref()).map(|o| timed(start, o)),
        other => return Err(CliError::Schema(format!("expected a multiplier document, found `{other}`"))),
    }
    let lm = ws.load_multiplier(path)?;
    let m = &lm.multiplier;
    let fd = m.source.fd().clone();
    let mut report = CliReport::new("multiplier", settings.seed, fd.tolerance());
    report.inputs.push(lm.reference.clone());
    let ucp = m.ucp()?;
    report.absorb(&ucp.report);
    report.table("ucp", ucp.is_ucp);
    report.table("support", names(&fd, m.support()));
    report.table("norms", m.norms());
    if let Some(eps) = opts.classify {
        let trunc = Truncation { fd: fd.clone(), boundary: lm.boundary.clone(), integers: None };
        let cl = classify_multiplier(m, eps, &trunc)?;
        report.table(
            "classification",
            serde_json::json!({
                "epsilon": eps,
                "finite_rank": cl.finite_rank,
                "compact": cl.compact,
                "cutoff_set": names(&fd, &cl.cutoff_set),
                "norms": cl.norms,
            }),
        );
    }
    if !opts.net.is_empty() {
        let mut net = Vec::with_capacity(opts.net.len());
        for p in &opts.net {
            let n = ws.load_multiplier(p)?;
            report.inputs.push(n.reference.clone());
            net.push(n.multiplier);
        }
        let window: Vec<Label> = opts.window.clone().unwrap_or_else(|| (0..fd.rank()).collect());
        let probe = convergence_probe(&net, m, &window)?;
        report.table(
            "convergence",
            serde_json::json!({
                "note": "residual tables at truncation scale",
                "window": names(&fd, &probe.window),
                "pointwise": probe.pointwise,
                "pointwise_window": probe.pointwise_window,
                "uniform": probe.uniform,
                "uniform_follows_pointwise": probe.uniform_follows_pointwise,
            }),
        );
    }
    Ok(timed(start, Outcome::new(report)))
}

fn cmd_qg_multiplier(ws: &mut Workspace, settings: &Settings, path: &Path, algebra: Option<&Path>) -> Result<Outcome> {
    let (q, r) = ws.load_qg_multiplier(path)?;
    let mut report = CliReport::new("multiplier", settings.seed, q.functor.fd.tolerance());
    report.inputs.push(r);
    let cert = match algebra {
        Some(p) => {
            let (a, ar): (AlgebraObject, DocRef) = ws.load_algebra(p)?;
            report.inputs.push(ar);
            qg_state_check_with(&q, &a)?
        }
        None => qg_state_check(&q)?,
    };
    report.absorb(&cert.report);
    report.table("is_state", cert.is_state);
    report.table("min_eigenvalue", cert.min_eigenvalue);
    report.table("max_norm", cert.max_norm);
    Ok(Outcome::new(report))
}

/// Structured error object printed on failure.
pub fn error_document(e: &CliError) -> Value {
    serde_json::json!({
        "format_version": FORMAT_VERSION,
        "kind": "error",
        "code": e.code(),
        "message": e.to_string(),
    })
}
