//! Graded Hilbert spaces: one finite-dimensional fiber per simple, each with a Gram matrix.

use std::sync::Arc;

use category_core::linalg::{c, max_abs};
use category_core::{DMatrix, DVector, FusionData, Label, Object, C64};

use crate::{GradedError, Result};

#[derive(Clone, Debug)]
pub struct GradedSpace {
    fd: Arc<FusionData>,
    grams: Vec<DMatrix<C64>>,
}

impl GradedSpace {
    /// Space with the given Gram matrices, one per label in label order.
    pub fn new(fd: Arc<FusionData>, grams: Vec<DMatrix<C64>>) -> Result<Self> {
        if grams.len() != fd.rank() {
            return Err(GradedError::Shape(format!("{} Gram matrices for rank {}", grams.len(), fd.rank())));
        }
        let tol = fd.tolerance();
        for (s, g) in grams.iter().enumerate() {
            if g.nrows() != g.ncols() {
                return Err(GradedError::Shape(format!("Gram of fiber {s} is not square")));
            }
            let scale = max_abs(g).max(1.0);
            if max_abs(&(g - g.adjoint())) > tol * scale {
                return Err(GradedError::Gram(format!("Gram of fiber {s} is not Hermitian")));
            }
            if g.nrows() > 0 && category_core::linalg::min_eigenvalue(g) <= tol * scale {
                return Err(GradedError::Gram(format!("Gram of fiber {s} is not positive definite")));
            }
        }
        Ok(GradedSpace { fd, grams })
    }

    /// Fibers `C^{dims[s]}` with identity Grams.
    pub fn with_dims(fd: Arc<FusionData>, dims: &[usize]) -> Self {
        assert_eq!(dims.len(), fd.rank(), "one dimension per label");
        let grams = dims.iter().map(|&n| DMatrix::identity(n, n)).collect();
        GradedSpace { fd, grams }
    }

    pub fn zero(fd: Arc<FusionData>) -> Self {
        let r = fd.rank();
        Self::with_dims(fd, &vec![0; r])
    }

    /// The graded space `C(·, x)` of an object, with orthonormal fibers.
    pub fn yoneda(fd: Arc<FusionData>, x: &Object) -> Self {
        let dims = x.mult.clone();
        Self::with_dims(fd, &dims)
    }

    /// Unit object `1`.
    pub fn unit(fd: Arc<FusionData>) -> Self {
        let x = Object::simple(fd.rank(), fd.unit());
        Self::yoneda(fd, &x)
    }

    pub(crate) fn from_parts(fd: Arc<FusionData>, grams: Vec<DMatrix<C64>>) -> Self {
        GradedSpace { fd, grams }
    }

    pub fn fd(&self) -> &Arc<FusionData> {
        &self.fd
    }

    pub fn rank(&self) -> usize {
        self.grams.len()
    }

    pub fn dim(&self, s: Label) -> usize {
        self.grams[s].nrows()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.grams.iter().map(|g| g.nrows()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.grams.iter().map(|g| g.nrows()).sum()
    }

    pub fn gram(&self, s: Label) -> &DMatrix<C64> {
        &self.grams[s]
    }

    pub fn grams(&self) -> &[DMatrix<C64>] {
        &self.grams
    }

    pub fn support(&self) -> Vec<Label> {
        (0..self.rank()).filter(|&s| self.dim(s) > 0).collect()
    }

    /// `⟨x, y⟩ = x* G_s y`, antilinear in the first slot.
    pub fn inner(&self, s: Label, x: &DVector<C64>, y: &DVector<C64>) -> C64 {
        (x.adjoint() * &self.grams[s] * y)[(0, 0)]
    }

    pub fn same_ambient(&self, other: &GradedSpace) -> bool {
        Arc::ptr_eq(&self.fd, &other.fd)
    }

    pub(crate) fn check_ambient(&self, other: &GradedSpace) -> Result<()> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(GradedError::Ambient)
        }
    }

    /// Fiberwise equality of dimensions and Grams.
    pub fn approx_eq(&self, other: &GradedSpace, tol: f64) -> bool {
        self.rank() == other.rank()
            && self.grams.iter().zip(&other.grams).all(|(a, b)| a.shape() == b.shape() && (a.nrows() == 0 || max_abs(&(a - b)) <= tol))
    }

    /// Orthogonal direct sum; fiber coordinates are concatenated in list order.
    pub fn direct_sum(parts: &[GradedSpace]) -> Result<GradedSpace> {
        let first = parts.first().ok_or_else(|| GradedError::Shape("empty direct sum".into()))?;
        for p in parts {
            first.check_ambient(p)?;
        }
        let grams = (0..first.rank())
            .map(|s| category_core::linalg::block_diag(&parts.iter().map(|p| p.grams[s].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(GradedSpace { fd: first.fd.clone(), grams })
    }

    /// `H̄(s) = conj(H(s̄))` with the conjugate Gram.
    pub fn conjugate(&self) -> GradedSpace {
        let grams = (0..self.rank()).map(|s| self.grams[self.fd.dual(s)].map(|z| z.conj())).collect();
        GradedSpace { fd: self.fd.clone(), grams }
    }

    /// Scalar multiples of the Gram matrices, e.g. `G_s/d_s` for the multiplicity spaces.
    pub fn scaled(&self, f: impl Fn(Label) -> f64) -> GradedSpace {
        let grams = self.grams.iter().enumerate().map(|(s, g)| g * c(f(s))).collect();
        GradedSpace { fd: self.fd.clone(), grams }
    }
}
