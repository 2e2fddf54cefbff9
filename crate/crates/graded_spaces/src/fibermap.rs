//! Bounded natural transformations between graded spaces, stored fiberwise.

use category_core::linalg::{c, max_abs, op_norm, psd_inv_sqrt, psd_sqrt};
use category_core::{DMatrix, DVector, Label, C64};

use crate::{GradedError, GradedSpace, Result};

#[derive(Clone, Debug)]
pub struct FiberMap {
    pub source: GradedSpace,
    pub target: GradedSpace,
    /// `blocks[s]` maps `source(s)` to `target(s)`.
    pub blocks: Vec<DMatrix<C64>>,
}

impl FiberMap {
    pub fn new(source: &GradedSpace, target: &GradedSpace, blocks: Vec<DMatrix<C64>>) -> Result<Self> {
        source.check_ambient(target)?;
        if blocks.len() != source.rank() {
            return Err(GradedError::Shape("one block per label expected".into()));
        }
        for (s, b) in blocks.iter().enumerate() {
            if b.nrows() != target.dim(s) || b.ncols() != source.dim(s) {
                return Err(GradedError::Shape(format!(
                    "block {s} is {}x{}, fibers are {}x{}",
                    b.nrows(),
                    b.ncols(),
                    target.dim(s),
                    source.dim(s)
                )));
            }
        }
        Ok(FiberMap { source: source.clone(), target: target.clone(), blocks })
    }

    pub fn zero(source: &GradedSpace, target: &GradedSpace) -> Self {
        let blocks = (0..source.rank()).map(|s| DMatrix::zeros(target.dim(s), source.dim(s))).collect();
        FiberMap { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn identity(h: &GradedSpace) -> Self {
        let blocks = (0..h.rank()).map(|s| DMatrix::identity(h.dim(s), h.dim(s))).collect();
        FiberMap { source: h.clone(), target: h.clone(), blocks }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FiberMap) -> Result<FiberMap> {
        if other.target.dims() != self.source.dims() {
            return Err(GradedError::Shape("composing through different fibers".into()));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect();
        Ok(FiberMap { source: other.source.clone(), target: self.target.clone(), blocks })
    }

    /// Adjoint for the fiber Grams: `f*_s = G_src⁻¹ f_s† G_tgt`.
    pub fn adjoint(&self) -> FiberMap {
        let blocks = (0..self.blocks.len())
            .map(|s| {
                let b = &self.blocks[s];
                if b.is_empty() {
                    return b.transpose();
                }
                let gs = self.source.gram(s);
                let gt = self.target.gram(s);
                let inv = gs.clone().try_inverse().expect("Gram matrices are invertible");
                inv * b.adjoint() * gt
            })
            .collect();
        FiberMap { source: self.target.clone(), target: self.source.clone(), blocks }
    }

    pub fn add(&self, other: &FiberMap) -> Result<FiberMap> {
        if self.source.dims() != other.source.dims() || self.target.dims() != other.target.dims() {
            return Err(GradedError::Shape("adding maps between different spaces".into()));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect();
        Ok(FiberMap { source: self.source.clone(), target: self.target.clone(), blocks })
    }

    pub fn scale(&self, z: C64) -> FiberMap {
        let blocks = self.blocks.iter().map(|b| b * z).collect();
        FiberMap { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn apply(&self, s: Label, v: &DVector<C64>) -> DVector<C64> {
        &self.blocks[s] * v
    }

    /// Operator norm of fiber `s` for the Gram inner products.
    pub fn fiber_norm(&self, s: Label) -> f64 {
        let b = &self.blocks[s];
        if b.is_empty() {
            return 0.0;
        }
        op_norm(&(psd_sqrt(self.target.gram(s)) * b * psd_inv_sqrt(self.source.gram(s))))
    }

    /// `sup_s ‖f_s‖`.
    pub fn norm(&self) -> f64 {
        (0..self.blocks.len()).map(|s| self.fiber_norm(s)).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(|b| if b.is_empty() { 0.0 } else { max_abs(b) }).fold(0.0, f64::max)
    }

    /// Largest entry of `self - other`.
    pub fn distance(&self, other: &FiberMap) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| if a.is_empty() { 0.0 } else { max_abs(&(a - b)) })
            .fold(0.0, f64::max)
    }

    /// Norm of `f*f - 1`.
    pub fn isometry_defect(&self) -> f64 {
        let p = self.adjoint().compose(self).expect("adjoint composes");
        p.add(&FiberMap::identity(&self.source).scale(c(-1.0))).expect("same shape").norm()
    }

    /// Concatenation of the column-major blocks.
    pub fn flatten(&self) -> DVector<C64> {
        let n: usize = self.blocks.iter().map(|b| b.len()).sum();
        DVector::from_iterator(n, self.blocks.iter().flat_map(|b| b.iter().cloned()))
    }

    /// Inverse of [`FiberMap::flatten`].
    pub fn unflatten(source: &GradedSpace, target: &GradedSpace, v: &DVector<C64>) -> FiberMap {
        let mut blocks = Vec::with_capacity(source.rank());
        let mut off = 0;
        for s in 0..source.rank() {
            let (r, cc) = (target.dim(s), source.dim(s));
            blocks.push(DMatrix::from_iterator(r, cc, v.iter().skip(off).take(r * cc).cloned()));
            off += r * cc;
        }
        FiberMap { source: source.clone(), target: target.clone(), blocks }
    }

    /// Number of scalar coordinates of a map between two spaces.
    pub fn coordinate_count(source: &GradedSpace, target: &GradedSpace) -> usize {
        (0..source.rank()).map(|s| source.dim(s) * target.dim(s)).sum()
    }
}
