//! Versioned JSON documents. Every document carries `format_version` and `kind`; unknown
//! fields are rejected. Cross-document references name the referenced file and its hash.

use std::collections::BTreeMap;
use std::sync::Arc;

use algebra_objects::AlgebraObject;
use category_core::fusion::RecouplingForm;
use category_core::{Channel, DualityData, FusionData, FusionInput, RecouplingInput};
use graded_spaces::{FiberMap, GradedSpace};
use serde::{Deserialize, Serialize};

use crate::canonical::{matrices_doc, matrices_from, vector_doc, vector_from, Complex, MatrixDoc, FORMAT_VERSION};
use crate::{CliError, Result};

/// Reference to another document: a path relative to the referencing file and the SHA-256 of
/// the canonical form of the referenced document.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocRef {
    pub path: String,
    pub sha256: String,
}

pub trait Document: Serialize + for<'de> Deserialize<'de> {
    const KIND: &'static str;
    fn header(&self) -> (u32, &str);
}

macro_rules! document {
    ($t:ty, $kind:literal) => {
        impl Document for $t {
            const KIND: &'static str = $kind;
            fn header(&self) -> (u32, &str) {
                (self.format_version, &self.kind)
            }
        }
    };
}

pub(crate) fn check_header<D: Document>(doc: &D) -> Result<()> {
    let (version, kind) = doc.header();
    if version != FORMAT_VERSION {
        return Err(CliError::Schema(format!("format_version {version} is not supported (expected {FORMAT_VERSION})")));
    }
    if kind != D::KIND {
        return Err(CliError::Schema(format!("expected a `{}` document, found `{kind}`", D::KIND)));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecouplingDoc {
    /// `[a, d, e, c]`.
    pub key: [usize; 4],
    /// `"U"` or `"F"`.
    pub form: String,
    /// Row channels `[f, γ, δ]`.
    pub rows: Vec<[usize; 3]>,
    /// Column channels `[b, α, β]`.
    pub cols: Vec<[usize; 3]>,
    pub matrix: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualityDoc {
    pub ev: Complex,
    pub coev: Complex,
    pub pivotal: Complex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub format_version: u32,
    pub kind: String,
    pub simples: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    pub dims: Vec<f64>,
    /// `[a, b, c, N_ab^c]` for nonzero multiplicities.
    pub fusion: Vec<[usize; 4]>,
    pub recoupling: Vec<RecouplingDoc>,
    pub duality: Vec<DualityDoc>,
    pub tolerance: f64,
}
document!(CategoryDoc, "category");

fn channel(x: &[usize; 3]) -> Channel {
    Channel::new(x[0], x[1], x[2])
}

impl CategoryDoc {
    pub fn from_fusion(fd: &FusionData) -> Self {
        let input = fd.to_input();
        CategoryDoc {
            format_version: FORMAT_VERSION,
            kind: Self::KIND.into(),
            simples: input.names,
            unit: input.unit,
            dual: input.dual,
            dims: input.dims,
            fusion: input.fusion.iter().map(|&(a, b, c, n)| [a, b, c, n]).collect(),
            recoupling: input
                .recoupling
                .iter()
                .map(|r| RecouplingDoc {
                    key: r.key,
                    form: match r.form {
                        RecouplingForm::U => "U".into(),
                        RecouplingForm::F => "F".into(),
                    },
                    rows: r.rows.iter().map(|c| [c.mid, c.m1, c.m2]).collect(),
                    cols: r.cols.iter().map(|c| [c.mid, c.m1, c.m2]).collect(),
                    matrix: MatrixDoc::from_matrix(&r.matrix),
                })
                .collect(),
            duality: input.duality.iter().map(|d| DualityDoc { ev: d.ev.into(), coev: d.coev.into(), pivotal: d.pivotal.into() }).collect(),
            tolerance: input.tolerance,
        }
    }

    pub fn to_fusion(&self, tolerance: Option<f64>) -> Result<FusionData> {
        let recoupling = self
            .recoupling
            .iter()
            .map(|r| {
                let form = match r.form.as_str() {
                    "U" => RecouplingForm::U,
                    "F" => RecouplingForm::F,
                    other => return Err(CliError::Schema(format!("unknown recoupling form `{other}`"))),
                };
                Ok(RecouplingInput {
                    key: r.key,
                    form,
                    rows: r.rows.iter().map(channel).collect(),
                    cols: r.cols.iter().map(channel).collect(),
                    matrix: r.matrix.to_matrix()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let input = FusionInput {
            names: self.simples.clone(),
            unit: self.unit,
            dual: self.dual.clone(),
            dims: self.dims.clone(),
            fusion: self.fusion.iter().map(|f| (f[0], f[1], f[2], f[3])).collect(),
            recoupling,
            duality: self.duality.iter().map(|d| DualityData { ev: d.ev.into(), coev: d.coev.into(), pivotal: d.pivotal.into() }).collect(),
            tolerance: self.tolerance,
        };
        let mut fd = FusionData::new(input)?;
        if let Some(t) = tolerance {
            fd.set_tolerance(t);
        }
        Ok(fd)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultDoc {
    /// `[s, t, c, α]`.
    pub key: [usize; 4],
    pub matrix: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub format_version: u32,
    pub kind: String,
    pub category: DocRef,
    pub fibers: Vec<usize>,
    pub mult: Vec<MultDoc>,
    pub unit: Vec<Complex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<MatrixDoc>>,
}
document!(AlgebraDoc, "algebra");

impl AlgebraDoc {
    pub fn from_algebra(a: &AlgebraObject, category: DocRef) -> Self {
        AlgebraDoc {
            format_version: FORMAT_VERSION,
            kind: Self::KIND.into(),
            category,
            fibers: a.dims().to_vec(),
            mult: a
                .mult_components()
                .iter()
                .map(|(&(s, t, c, al), m)| MultDoc { key: [s, t, c, al], matrix: MatrixDoc::from_matrix(m) })
                .collect(),
            unit: vector_doc(a.unit()),
            star: a.star_matrices().map(matrices_doc),
        }
    }

    pub fn to_algebra(&self, fd: Arc<FusionData>) -> Result<AlgebraObject> {
        let mut mult = BTreeMap::new();
        for m in &self.mult {
            let key = (m.key[0], m.key[1], m.key[2], m.key[3]);
            if mult.insert(key, m.matrix.to_matrix()?).is_some() {
                return Err(CliError::Schema(format!("duplicate multiplication entry {:?}", m.key)));
            }
        }
        let star = self.star.as_deref().map(matrices_from).transpose()?;
        Ok(AlgebraObject::new(fd, self.fibers.clone(), mult, vector_from(&self.unit), star)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub format_version: u32,
    pub kind: String,
    pub algebra: DocRef,
    /// Values on the basis of the unit fiber.
    pub functional: Vec<Complex>,
}
document!(StateDoc, "state");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedSpaceDoc {
    pub format_version: u32,
    pub kind: String,
    pub category: DocRef,
    /// Gram matrix of every fiber.
    pub grams: Vec<MatrixDoc>,
}
document!(GradedSpaceDoc, "graded_space");

pub fn space_from(fd: Arc<FusionData>, grams: &[MatrixDoc]) -> Result<GradedSpace> {
    Ok(GradedSpace::new(fd, matrices_from(grams)?)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberMapDoc {
    pub format_version: u32,
    pub kind: String,
    pub category: DocRef,
    pub source: Vec<MatrixDoc>,
    pub target: Vec<MatrixDoc>,
    pub blocks: Vec<MatrixDoc>,
}
document!(FiberMapDoc, "fiber_map");

impl FiberMapDoc {
    pub fn from_map(f: &FiberMap, category: DocRef) -> Self {
        FiberMapDoc {
            format_version: FORMAT_VERSION,
            kind: Self::KIND.into(),
            category,
            source: matrices_doc(f.source.grams()),
            target: matrices_doc(f.target.grams()),
            blocks: matrices_doc(&f.blocks),
        }
    }

    pub fn to_map(&self, fd: Arc<FusionData>) -> Result<FiberMap> {
        let source = space_from(fd.clone(), &self.source)?;
        let target = space_from(fd, &self.target)?;
        Ok(FiberMap::new(&source, &target, matrices_from(&self.blocks)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    pub format_version: u32,
    pub kind: String,
    pub algebra: DocRef,
    /// Gram matrices of the represented space `H`.
    pub space: Vec<MatrixDoc>,
    /// `π_s : A(s) → B(H)(s)`.
    pub maps: Vec<MatrixDoc>,
}
document!(RepresentationDoc, "representation");

/// A multiplier `A ⇒ B`. The target is an algebra document or `B(H)` for the given space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplierDoc {
    pub format_version: u32,
    pub kind: String,
    pub source: DocRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<DocRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_space: Option<Vec<MatrixDoc>>,
    pub maps: Vec<MatrixDoc>,
    /// Labels standing for the far end of a truncated category.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<usize>,
}
document!(MultiplierDoc, "multiplier");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    /// `[a, b, c, α]`.
    pub key: [usize; 4],
    pub matrix: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QgMultiplierDoc {
    pub format_version: u32,
    pub kind: String,
    pub category: DocRef,
    pub dims: Vec<usize>,
    pub vertices: Vec<VertexDoc>,
    pub evs: Vec<Vec<Complex>>,
    pub phi: Vec<MatrixDoc>,
    pub cutoff: Vec<usize>,
}
document!(QgMultiplierDoc, "qg_multiplier");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommutantDoc {
    pub format_version: u32,
    pub kind: String,
    pub representation: DocRef,
    /// `[c, d, dim]` for the commutant hom spaces.
    pub hom_dims: Vec<[usize; 3]>,
    /// Bases of the hom spaces as flattened fiber maps, in `hom_dims` order.
    pub bases: Vec<Vec<Vec<Complex>>>,
    /// `[a, b, dim M''(a,b), dim span]`, when the bicommutant was computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bicommutant: Option<Vec<[usize; 4]>>,
}
document!(CommutantDoc, "commutant");

pub fn new_header<D: Document>() -> (u32, String) {
    (FORMAT_VERSION, D::KIND.to_string())
}
