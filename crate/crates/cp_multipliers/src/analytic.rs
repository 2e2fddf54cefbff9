//! Support, norms, finite rank and compactness of multipliers on connected algebras.
//!
//! Infinite categories are handled through finite truncations. The `boundary` labels of a
//! [`Truncation`] stand in for everything beyond the window: a multiplier counts as finite rank
//! or compact only if the relevant set stays off the boundary.

use std::sync::Arc;

use category_core::linalg::{op_norm, psd_inv_sqrt, psd_sqrt};
use category_core::{FusionData, Label};
use representations::State;

use crate::{CpError, Multiplier, Result};

#[derive(Clone, Debug)]
pub struct Truncation {
    pub fd: Arc<FusionData>,
    pub boundary: Vec<Label>,
    /// Integer represented by each label, when the truncation models `Z`.
    pub integers: Option<Vec<i64>>,
}

impl Truncation {
    /// A genuinely finite category: no boundary.
    pub fn finite(fd: Arc<FusionData>) -> Self {
        Truncation { fd, boundary: Vec::new(), integers: None }
    }

    /// `{-width, …, width} ⊂ Z` realized as `Z/(2·width+1)`; the boundary is `±width`.
    pub fn integers(width: usize) -> Self {
        let n = 2 * width + 1;
        let fd = Arc::new(FusionData::cyclic(n));
        let w = width as i64;
        let integers: Vec<i64> = (0..n as i64).map(|k| if k <= w { k } else { k - n as i64 }).collect();
        let boundary = if width == 0 { Vec::new() } else { vec![width, width + 1] };
        Truncation { fd, boundary, integers: Some(integers) }
    }

    /// Label of the integer `k`, for truncations of `Z`.
    pub fn label(&self, k: i64) -> Option<Label> {
        self.integers.as_ref()?.iter().position(|&m| m == k)
    }

    pub fn integer(&self, s: Label) -> Option<i64> {
        self.integers.as_ref().map(|v| v[s])
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub support: Vec<Label>,
    /// `‖Ψ_a‖` on `L²(M)(a)` for the unique state.
    pub norms: Vec<f64>,
    pub finite_rank: bool,
    pub epsilon: f64,
    /// Minimal `F` with `‖Ψ_a‖ < ε` off `F`.
    pub cutoff_set: Vec<Label>,
    pub compact: bool,
}

fn l2_norms(m: &Multiplier) -> Result<Vec<f64>> {
    let a = &m.source;
    if !a.is_connected() || !m.target.is_connected() || a.dims() != m.target.dims() {
        return Err(CpError::Unsupported("classification needs a multiplier of one connected algebra".into()));
    }
    let st = State::connected(a)?;
    let mut out = Vec::with_capacity(m.maps.len());
    for s in 0..m.maps.len() {
        if a.dim(s) == 0 {
            out.push(0.0);
            continue;
        }
        let g = st.right_gram(s)?;
        out.push(op_norm(&(psd_sqrt(&g) * &m.maps[s] * psd_inv_sqrt(&g))));
    }
    Ok(out)
}

pub fn classify_multiplier(m: &Multiplier, epsilon: f64, trunc: &Truncation) -> Result<Classification> {
    let norms = l2_norms(m)?;
    let support = m.support().to_vec();
    let finite_rank = support.iter().all(|s| !trunc.boundary.contains(s));
    let cutoff_set: Vec<Label> = (0..norms.len()).filter(|&s| norms[s] >= epsilon).collect();
    let compact = cutoff_set.iter().all(|s| !trunc.boundary.contains(s));
    Ok(Classification { support, norms, finite_rank, epsilon, cutoff_set, compact })
}

/// Residual tables of a net against a target, at truncation scale.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    /// `pointwise[k][a] = ‖θ^{(k)}_a − θ_a‖`.
    pub pointwise: Vec<Vec<f64>>,
    /// `uniform[k] = sup_a pointwise[k][a]`.
    pub uniform: Vec<f64>,
    pub window: Vec<Label>,
    /// `max_{a ∈ window} pointwise[k][a]`.
    pub pointwise_window: Vec<f64>,
    /// The uniform residual decays at least as fast as the windowed pointwise residual.
    pub uniform_follows_pointwise: bool,
}

pub fn convergence_probe(net: &[Multiplier], target: &Multiplier, window: &[Label]) -> Result<ProbeReport> {
    let tol = target.source.fd().tolerance();
    let mut pointwise = Vec::with_capacity(net.len());
    for m in net {
        if m.source.dims() != target.source.dims() || m.target.dims() != target.target.dims() {
            return Err(CpError::Shape("net element and target act on different algebras".into()));
        }
        let diff = Multiplier::new(&m.source, &m.target, m.maps.iter().zip(&target.maps).map(|(x, y)| x - y).collect())?;
        pointwise.push(l2_norms(&diff)?);
    }
    let uniform: Vec<f64> = pointwise.iter().map(|r| r.iter().cloned().fold(0.0, f64::max)).collect();
    let pointwise_window: Vec<f64> = pointwise.iter().map(|r| window.iter().map(|&a| r[a]).fold(0.0, f64::max)).collect();
    let follows = match (uniform.first(), uniform.last(), pointwise_window.first(), pointwise_window.last()) {
        (Some(&u0), Some(&u1), Some(&p0), Some(&p1)) => {
            if u1 <= tol {
                true
            } else if u0 <= tol || p0 <= tol {
                false
            } else {
                u1 / u0 <= p1 / p0 + tol
            }
        }
        _ => true,
    };
    Ok(ProbeReport { pointwise, uniform, window: window.to_vec(), pointwise_window, uniform_follows_pointwise: follows })
}
