//! Fusion rules on their own: multiplicity arithmetic and Perron–Frobenius dimensions.

use crate::fusion::{FusionData, Label};
use crate::hom::Object;
use crate::{CategoryError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FusionRules {
    names: Vec<String>,
    n: Vec<usize>,
}

impl FusionRules {
    /// `table[a][b][c] = N_{ab}^c`.
    pub fn new(names: Vec<String>, table: &[Vec<Vec<usize>>]) -> Result<Self> {
        let r = names.len();
        if table.len() != r || table.iter().any(|t| t.len() != r || t.iter().any(|u| u.len() != r)) {
            return Err(CategoryError::Structure("fusion table must be rank × rank × rank".into()));
        }
        let n = table.iter().flat_map(|t| t.iter().flat_map(|u| u.iter().copied())).collect();
        Ok(FusionRules { names, n })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n(&self, a: Label, b: Label, c: Label) -> usize {
        let r = self.rank();
        self.n[(a * r + b) * r + c]
    }

    /// `(x⊗y)_c = Σ_{a,b} x_a y_b N_{ab}^c`.
    pub fn fuse(&self, x: &Object, y: &Object) -> Result<Object> {
        let r = self.rank();
        if x.mult.len() != r || y.mult.len() != r {
            return Err(CategoryError::Mismatch("objects from a different category".into()));
        }
        let mut out = Object::zero(r);
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    out.mult[c] += x.mult[a] * y.mult[b] * self.n(a, b, c);
                }
            }
        }
        Ok(out)
    }

    pub fn hom_dim(&self, x: &Object, y: &Object) -> Result<usize> {
        if x.mult.len() != self.rank() || y.mult.len() != self.rank() {
            return Err(CategoryError::Mismatch("objects from a different category".into()));
        }
        Ok(x.mult.iter().zip(&y.mult).map(|(a, b)| a * b).sum())
    }

    /// Perron–Frobenius dimensions, normalized so the unit (label `unit`) has dimension 1.
    pub fn perron_frobenius_dims(&self, unit: Label) -> Vec<f64> {
        let r = self.rank();
        let mut v = vec![1.0; r];
        for _ in 0..2000 {
            let mut w = vec![0.0; r];
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        w[b] += self.n(a, b, c) as f64 * v[c];
                    }
                }
            }
            let s = w[unit];
            let next: Vec<f64> = w.iter().map(|x| x / s).collect();
            let delta = next.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            v = next;
            if delta < 1e-15 {
                break;
            }
        }
        v
    }
}

impl FusionData {
    pub fn rules(&self) -> FusionRules {
        let r = self.rank();
        let table: Vec<Vec<Vec<usize>>> =
            (0..r).map(|a| (0..r).map(|b| (0..r).map(|c| self.n(a, b, c)).collect()).collect()).collect();
        FusionRules::new(self.names().to_vec(), &table).expect("square table")
    }

    /// Largest gap between the stored dimensions and the Perron–Frobenius dimensions.
    pub fn perron_frobenius_residual(&self) -> f64 {
        let pf = self.rules().perron_frobenius_dims(self.unit());
        pf.iter().zip(self.dims()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}
