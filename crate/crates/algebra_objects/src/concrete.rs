//! Finite-dimensional unital *-algebras given by structure constants.

use category_core::linalg::{c, herm_eig, max_abs, op_norm, psd_inv_sqrt, psd_sqrt};
use category_core::{Check, DMatrix, DVector, Report, C64};

use crate::{AlgebraError, Result};

#[derive(Clone, Debug)]
pub struct ConcreteStarAlgebra {
    /// `left[k]` is the matrix of `y ↦ e_k y`.
    pub left: Vec<DMatrix<C64>>,
    /// `x* = star · conj(x)`.
    pub star: DMatrix<C64>,
    pub unit: DVector<C64>,
}

/// Outcome of the C*-test: the trace form, its spectrum and a witness when it is not positive.
#[derive(Clone, Debug)]
pub struct CStarDecision {
    pub is_cstar: bool,
    pub min_eigenvalue: f64,
    pub threshold: f64,
    pub hermitian_residual: f64,
    /// Most negative eigenvector of the form when the test fails.
    pub witness: Option<DVector<C64>>,
}

impl ConcreteStarAlgebra {
    pub fn new(left: Vec<DMatrix<C64>>, star: DMatrix<C64>, unit: DVector<C64>) -> Result<Self> {
        let n = unit.len();
        if left.len() != n || left.iter().any(|m| m.shape() != (n, n)) || star.shape() != (n, n) {
            return Err(AlgebraError::Shape("structure constants do not match the dimension".into()));
        }
        Ok(ConcreteStarAlgebra { left, star, unit })
    }

    /// `M_n(C)` with matrix units `e_{ij}` at index `i n + j`.
    pub fn matrix_algebra(n: usize) -> Self {
        let dim = n * n;
        let mut left = vec![DMatrix::zeros(dim, dim); dim];
        let mut star = DMatrix::zeros(dim, dim);
        let mut unit = DVector::zeros(dim);
        for i in 0..n {
            unit[i * n + i] = c(1.0);
            for j in 0..n {
                star[(j * n + i, i * n + j)] = c(1.0);
                for k in 0..n {
                    // e_{ij} e_{jk} = e_{ik}
                    left[i * n + j][(i * n + k, j * n + k)] = c(1.0);
                }
            }
        }
        ConcreteStarAlgebra { left, star, unit }
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn basis(&self, k: usize) -> DVector<C64> {
        let mut v = DVector::zeros(self.dim());
        v[k] = c(1.0);
        v
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult(&self, x: &DVector<C64>) -> DMatrix<C64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (k, l) in self.left.iter().enumerate() {
            if x[k].norm() != 0.0 {
                m += l * x[k];
            }
        }
        m
    }

    pub fn mul(&self, x: &DVector<C64>, y: &DVector<C64>) -> DVector<C64> {
        self.left_mult(x) * y
    }

    pub fn adjoint(&self, x: &DVector<C64>) -> DVector<C64> {
        &self.star * x.map(|z| z.conj())
    }

    /// Associativity, unit and anti-multiplicativity residuals.
    pub fn check(&self, tol: f64) -> Report {
        let n = self.dim();
        let mut rep = Report::default();
        let scale = self.left.iter().map(max_abs).fold(1.0, f64::max);
        let mut assoc = 0.0f64;
        let mut anti = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let ab = self.left[a].column(b).into_owned();
                // (e_a e_b) y = e_a (e_b y)
                assoc = assoc.max(max_abs(&(self.left_mult(&ab) - &self.left[a] * &self.left[b])));
                let lhs = self.adjoint(&ab);
                let rhs = self.mul(&self.adjoint(&self.basis(b)), &self.adjoint(&self.basis(a)));
                anti = anti.max(category_core::linalg::max_abs_vec(&(lhs - rhs)));
            }
        }
        let lu = self.left_mult(&self.unit);
        let unit_left = if n == 0 { 0.0 } else { max_abs(&(lu - DMatrix::identity(n, n))) };
        let unit_right = (0..n)
            .map(|k| category_core::linalg::max_abs_vec(&(self.mul(&self.basis(k), &self.unit) - self.basis(k))))
            .fold(0.0, f64::max);
        let invol = (0..n)
            .map(|k| category_core::linalg::max_abs_vec(&(self.adjoint(&self.adjoint(&self.basis(k))) - self.basis(k))))
            .fold(0.0, f64::max);
        rep.push(Check::new("associativity", assoc, tol * scale * scale));
        rep.push(Check::new("unit", unit_left.max(unit_right), tol * scale));
        rep.push(Check::new("star_involutive", invol, tol * scale));
        rep.push(Check::new("star_antimultiplicative", anti, tol * scale * scale));
        rep
    }

    /// Sesquilinear form `⟨x, y⟩ = Tr(L_{x* y})` as a matrix `Q` with `⟨x, y⟩ = x† Q y`.
    pub fn trace_form(&self) -> DMatrix<C64> {
        let n = self.dim();
        // Tr(L_m L_l) = Σ_ij (L_m)_ij (L_l)_ji, one matrix product over flattened entries.
        let flat = DMatrix::from_fn(n, n * n, |m, k| self.left[m].as_slice()[k]);
        let flat_t = DMatrix::from_fn(n * n, n, |k, l| self.left[l][(k / n, k % n)]);
        let traces = flat * flat_t;
        DMatrix::from_fn(n, n, |k, l| (0..n).map(|m| self.star[(m, k)] * traces[(m, l)]).sum())
    }

    /// C* iff the trace form of the regular representation is positive definite.
    pub fn cstar_decision(&self, tol: f64) -> CStarDecision {
        let q = self.trace_form();
        let scale = if q.is_empty() { 1.0 } else { max_abs(&q).max(1.0) };
        let herm = if q.is_empty() { 0.0 } else { max_abs(&(&q - q.adjoint())) };
        let h = (&q + q.adjoint()) * c(0.5);
        let (vals, vecs) = herm_eig(&h);
        let min = vals.first().copied().unwrap_or(f64::INFINITY);
        let threshold = tol * scale;
        let ok = herm <= threshold && min > threshold;
        CStarDecision {
            is_cstar: ok,
            min_eigenvalue: min,
            threshold,
            hermitian_residual: herm,
            witness: (!ok && !vals.is_empty()).then(|| vecs.column(0).into_owned()),
        }
    }

    /// Faithful *-representation on the GNS space of the regular trace; requires a C* algebra.
    pub fn faithful_rep(&self) -> FaithfulRep {
        let q = self.trace_form();
        let h = (&q + q.adjoint()) * c(0.5);
        FaithfulRep { sqrt: psd_sqrt(&h), inv_sqrt: psd_inv_sqrt(&h), alg: self.clone() }
    }
}

/// `x ↦ Q^{1/2} L_x Q^{-1/2}` on `C^n` with the standard inner product.
#[derive(Clone, Debug)]
pub struct FaithfulRep {
    sqrt: DMatrix<C64>,
    inv_sqrt: DMatrix<C64>,
    alg: ConcreteStarAlgebra,
}

impl FaithfulRep {
    pub fn image(&self, x: &DVector<C64>) -> DMatrix<C64> {
        &self.sqrt * self.alg.left_mult(x) * &self.inv_sqrt
    }

    /// C*-norm of `x`.
    pub fn norm(&self, x: &DVector<C64>) -> f64 {
        op_norm(&self.image(x))
    }

    /// Smallest eigenvalue of the Hermitian part of the image; `x ≥ 0` iff this is `≥ 0`
    /// and the image is Hermitian.
    pub fn min_eigenvalue(&self, x: &DVector<C64>) -> f64 {
        let m = self.image(x);
        category_core::linalg::min_eigenvalue(&((&m + m.adjoint()) * c(0.5)))
    }

    /// Distance of the image from its adjoint.
    pub fn hermitian_residual(&self, x: &DVector<C64>) -> f64 {
        let m = self.image(x);
        if m.is_empty() {
            0.0
        } else {
            max_abs(&(&m - m.adjoint()))
        }
    }
}
