//! Semisimple objects and morphisms between them, stored as one matrix per simple.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::Rng;

use crate::fusion::{FusionData, Label};
use crate::{CategoryError, Result};

/// Direct sum of simples with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Object {
    pub mult: Vec<usize>,
}

/// Copy `copy` of the simple `label` inside an object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub label: Label,
    pub copy: usize,
}

/// A simple summand `c` of `x⊗y`, embedded through the vertex `μ ∈ C(c, s⊗t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FusedSummand {
    pub top: Label,
    pub left: Summand,
    pub right: Summand,
    pub vertex: usize,
}

impl Object {
    pub fn zero(rank: usize) -> Self {
        Object { mult: vec![0; rank] }
    }

    pub fn simple(rank: usize, a: Label) -> Self {
        let mut o = Self::zero(rank);
        o.mult[a] = 1;
        o
    }

    /// Every simple once.
    pub fn all_simples(rank: usize) -> Self {
        Object { mult: vec![1; rank] }
    }

    pub fn summands(&self) -> Vec<Summand> {
        let mut out = Vec::new();
        for (label, &m) in self.mult.iter().enumerate() {
            for copy in 0..m {
                out.push(Summand { label, copy });
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.mult.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn simple_label(&self) -> Option<Label> {
        if self.len() == 1 {
            self.mult.iter().position(|&m| m == 1)
        } else {
            None
        }
    }

    pub fn direct_sum(&self, other: &Object) -> Object {
        Object { mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect() }
    }
}

impl FusionData {
    pub fn object_dim(&self, x: &Object) -> f64 {
        x.mult.iter().enumerate().map(|(a, &m)| m as f64 * self.dim(a)).sum()
    }

    pub fn dual_object(&self, x: &Object) -> Object {
        let mut o = Object::zero(self.rank());
        for a in self.labels() {
            o.mult[self.dual(a)] = x.mult[a];
        }
        o
    }

    /// `x⊗y` and, for every simple `c`, its summands in canonical order `(s, t, μ, i, j)`.
    pub fn fuse_objects(&self, x: &Object, y: &Object) -> (Object, Vec<Vec<FusedSummand>>) {
        let mut lists = vec![Vec::new(); self.rank()];
        for s in self.labels() {
            for t in self.labels() {
                for top in self.labels() {
                    for vertex in 0..self.n(s, t, top) {
                        for i in 0..x.mult[s] {
                            for j in 0..y.mult[t] {
                                lists[top].push(FusedSummand {
                                    top,
                                    left: Summand { label: s, copy: i },
                                    right: Summand { label: t, copy: j },
                                    vertex,
                                });
                            }
                        }
                    }
                }
            }
        }
        let obj = Object { mult: lists.iter().map(|l| l.len()).collect() };
        (obj, lists)
    }

    /// `dim C(x, y)`.
    pub fn hom_dim(&self, x: &Object, y: &Object) -> usize {
        x.mult.iter().zip(&y.mult).map(|(a, b)| a * b).sum()
    }
}

/// Morphism `source → target`; `blocks[s]` maps the `s`-isotypic multiplicity space.
#[derive(Clone, Debug, PartialEq)]
pub struct HomElement {
    pub source: Object,
    pub target: Object,
    pub blocks: Vec<DMatrix<C64>>,
}

impl HomElement {
    pub fn zero(source: &Object, target: &Object) -> Self {
        let blocks = source
            .mult
            .iter()
            .zip(&target.mult)
            .map(|(&m, &n)| DMatrix::zeros(n, m))
            .collect();
        HomElement { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn identity(x: &Object) -> Self {
        let blocks = x.mult.iter().map(|&m| DMatrix::identity(m, m)).collect();
        HomElement { source: x.clone(), target: x.clone(), blocks }
    }

    pub fn random<R: Rng>(rng: &mut R, source: &Object, target: &Object) -> Self {
        let mut h = Self::zero(source, target);
        for b in h.blocks.iter_mut() {
            *b = crate::linalg::random_matrix(rng, b.nrows(), b.ncols());
        }
        h
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HomElement) -> Result<HomElement> {
        if self.source != other.target {
            return Err(CategoryError::Mismatch("composition through different objects".into()));
        }
        Ok(HomElement {
            source: other.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn adjoint(&self) -> HomElement {
        HomElement {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn add(&self, other: &HomElement) -> Result<HomElement> {
        if self.source != other.source || self.target != other.target {
            return Err(CategoryError::Mismatch("sum of morphisms with different shapes".into()));
        }
        Ok(HomElement {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, z: C64) -> HomElement {
        HomElement {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b * z).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(crate::linalg::max_abs).fold(0.0, f64::max)
    }

    /// Categorical trace `Σ_s d_s tr(f_s)` of an endomorphism.
    pub fn quantum_trace(&self, fd: &FusionData) -> C64 {
        self.blocks
            .iter()
            .enumerate()
            .map(|(s, b)| b.trace() * fd.dim(s))
            .sum()
    }

    /// `f ⊗ g` in the canonical decompositions of the tensor products.
    pub fn tensor(&self, fd: &FusionData, g: &HomElement) -> HomElement {
        let (src, src_list) = fd.fuse_objects(&self.source, &g.source);
        let (tgt, tgt_list) = fd.fuse_objects(&self.target, &g.target);
        let mut out = HomElement::zero(&src, &tgt);
        for top in fd.labels() {
            for (r, ts) in tgt_list[top].iter().enumerate() {
                for (col, ss) in src_list[top].iter().enumerate() {
                    if ts.left.label == ss.left.label && ts.right.label == ss.right.label && ts.vertex == ss.vertex {
                        let a = self.blocks[ts.left.label][(ts.left.copy, ss.left.copy)];
                        let b = g.blocks[ts.right.label][(ts.right.copy, ss.right.copy)];
                        out.blocks[top][(r, col)] = a * b;
                    }
                }
            }
        }
        out
    }
}
