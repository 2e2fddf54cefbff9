//! Positivity through Schur products: `A ≥ 0` iff `v(B⋆A)v* ≥ 0` for all `B ≥ 0`, `v = (1,…,1)`.

use category_core::linalg::{c, herm_eig, max_abs, random_matrix};
use category_core::{DMatrix, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{CpError, Result};

#[derive(Clone, Debug)]
pub struct SchurResult {
    /// Verdict of the Schur test over the sampled and constructed `B`.
    pub positive: bool,
    /// Smallest real part of `v(B⋆A)v*` over the random positive `B`, each of trace one.
    pub sampled_min: f64,
    /// `B = ZVZ*` built from an eigenvector of `A`, and `v(B⋆A)v*` for it.
    pub constructed: (DMatrix<C64>, C64),
    /// A positive `B` with `v(B⋆A)v*` negative or non-real.
    pub violating: Option<DMatrix<C64>>,
}

/// `v(B⋆A)v* = Σ_ij B_ij A_ij`.
fn pairing(b: &DMatrix<C64>, a: &DMatrix<C64>) -> C64 {
    b.iter().zip(a.iter()).map(|(x, y)| x * y).sum()
}

/// `B_ij = conj(w_i) w_j`, i.e. `Z V Z*` with `Z = diag(w̄)`, so that `v(B⋆A)v* = w* A w`.
fn from_vector(w: &[C64]) -> DMatrix<C64> {
    let n = w.len();
    DMatrix::from_fn(n, n, |i, j| w[i].conj() * w[j])
}

/// Tests `A ≥ 0` through the lemma: `trials` random positive `B`, plus the two `B = ZVZ*`
/// built from the lowest eigenvector of `(A + A*)/2` and the top eigenvector of `(A − A*)/2i`.
pub fn schur_criterion(a: &DMatrix<C64>, trials: usize, seed: u64, tol: f64) -> Result<SchurResult> {
    if a.nrows() != a.ncols() {
        return Err(CpError::Shape("the Schur criterion needs a square matrix".into()));
    }
    let n = a.nrows();
    let scale = if n == 0 { 1.0 } else { max_abs(a).max(1.0) };
    let thr = tol * scale;
    let bad = |z: C64| z.re < -thr || z.im.abs() > thr;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled_min = f64::INFINITY;
    let mut violating = None;
    for _ in 0..trials {
        let g = random_matrix(&mut rng, n, n);
        let mut b = &g * g.adjoint();
        let tr = b.trace().re;
        if tr > 0.0 {
            b /= c(tr);
        }
        let z = pairing(&b, a);
        sampled_min = sampled_min.min(z.re);
        if violating.is_none() && bad(z) {
            violating = Some(b);
        }
    }
    if n == 0 {
        return Ok(SchurResult { positive: true, sampled_min, constructed: (DMatrix::zeros(0, 0), c(0.0)), violating });
    }
    let herm = (a + a.adjoint()) * c(0.5);
    let (_, vecs) = herm_eig(&herm);
    let low: Vec<C64> = vecs.column(0).iter().cloned().collect();
    let b_low = from_vector(&low);
    let z_low = pairing(&b_low, a);
    let skew = (a - a.adjoint()) * C64::new(0.0, -0.5);
    let (svals, svecs) = herm_eig(&skew);
    let top = if svals[0].abs() > svals[n - 1].abs() { 0 } else { n - 1 };
    let b_skew = from_vector(&svecs.column(top).iter().cloned().collect::<Vec<_>>());
    let z_skew = pairing(&b_skew, a);
    if violating.is_none() && bad(z_low) {
        violating = Some(b_low.clone());
    }
    if violating.is_none() && bad(z_skew) {
        violating = Some(b_skew);
    }
    Ok(SchurResult { positive: violating.is_none(), sampled_min, constructed: (b_low, z_low), violating })
}
