//! Reversed and Deligne products of fusion data.

use nalgebra::DMatrix;

use crate::fusion::{Channel, DualityData, FusionData, FusionInput, Label, RecouplingForm, RecouplingInput};
use crate::Result;

impl FusionData {
    /// The same category with reversed tensor product, `a ⊗ᵐᵖ b = b ⊗ a`.
    ///
    /// Vertex spaces are shared: `Cᵐᵖ(c, a⊗ᵐᵖb) = C(c, b⊗a)` with the same basis.
    pub fn mirror(&self) -> Result<FusionData> {
        let r = self.rank();
        let mut fusion = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let m = self.n(b, a, c);
                    if m > 0 {
                        fusion.push((a, b, c, m));
                    }
                }
            }
        }
        let unit = self.unit();
        let mut recoupling = Vec::new();
        for a in 0..r {
            for d in 0..r {
                for e in 0..r {
                    if a == unit || d == unit || e == unit {
                        continue;
                    }
                    for c in 0..r {
                        // rows (f, γ ∈ C(f, d⊗a), δ ∈ C(c, e⊗f)); cols (b, α ∈ C(c, b⊗a), β ∈ C(b, e⊗d))
                        let mut rows = Vec::new();
                        let mut cols = Vec::new();
                        for f in 0..r {
                            for g in 0..self.n(d, a, f) {
                                for h in 0..self.n(e, f, c) {
                                    rows.push(Channel::new(f, g, h));
                                }
                            }
                        }
                        for b in 0..r {
                            for x in 0..self.n(b, a, c) {
                                for y in 0..self.n(e, d, b) {
                                    cols.push(Channel::new(b, x, y));
                                }
                            }
                        }
                        if cols.is_empty() {
                            continue;
                        }
                        let m = DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
                            let (t, s) = (rows[i], cols[j]);
                            self.uinv([e, d, a, c], Channel::new(t.mid, t.m2, t.m1), Channel::new(s.mid, s.m2, s.m1))
                        });
                        recoupling.push(RecouplingInput { key: [a, d, e, c], form: RecouplingForm::U, rows, cols, matrix: m });
                    }
                }
            }
        }
        let duality = self
            .labels()
            .map(|a| {
                let da = self.duality(a);
                let ev = da.coev.conj();
                let coev = da.ev.conj();
                let pivotal = self.duality(self.dual(a)).coev / da.ev.conj();
                DualityData { ev, coev, pivotal }
            })
            .collect();
        FusionData::new(FusionInput {
            names: self.names().to_vec(),
            unit,
            dual: self.labels().map(|a| self.dual(a)).collect(),
            dims: self.dims().to_vec(),
            fusion,
            recoupling,
            duality,
            tolerance: self.tolerance(),
        })
    }

    /// Deligne product; the label `(a, b)` is `a·rank(other) + b` and vertex `(μ, ν)` is `μ·N' + ν`.
    pub fn deligne(&self, other: &FusionData) -> Result<FusionData> {
        let (r1, r2) = (self.rank(), other.rank());
        let pair = |a: Label, b: Label| a * r2 + b;
        let split = |x: Label| (x / r2, x % r2);
        let r = r1 * r2;
        let names: Vec<String> = (0..r)
            .map(|x| {
                let (a, b) = split(x);
                format!("{}⊠{}", self.name(a), other.name(b))
            })
            .collect();
        let n = |a: Label, b: Label, c: Label| {
            let ((a1, a2), (b1, b2), (c1, c2)) = (split(a), split(b), split(c));
            self.n(a1, b1, c1) * other.n(a2, b2, c2)
        };
        let mut fusion = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if n(a, b, c) > 0 {
                        fusion.push((a, b, c, n(a, b, c)));
                    }
                }
            }
        }
        let unit = pair(self.unit(), other.unit());
        let mut recoupling = Vec::new();
        for a in 0..r {
            for d in 0..r {
                for e in 0..r {
                    if a == unit || d == unit || e == unit {
                        continue;
                    }
                    for c in 0..r {
                        let mut rows = Vec::new();
                        let mut cols = Vec::new();
                        for f in 0..r {
                            for g in 0..n(a, d, f) {
                                for h in 0..n(f, e, c) {
                                    rows.push(Channel::new(f, g, h));
                                }
                            }
                        }
                        for b in 0..r {
                            for x in 0..n(a, b, c) {
                                for y in 0..n(d, e, b) {
                                    cols.push(Channel::new(b, x, y));
                                }
                            }
                        }
                        if cols.is_empty() {
                            continue;
                        }
                        let ((a1, a2), (d1, d2), (e1, e2), (c1, c2)) = (split(a), split(d), split(e), split(c));
                        let m = DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
                            let (t, s) = (rows[i], cols[j]);
                            let ((f1, f2), (b1, b2)) = (split(t.mid), split(s.mid));
                            let (nt1, nt2) = (other.n(a2, d2, f2), other.n(f2, e2, c2));
                            let (ns1, ns2) = (other.n(a2, b2, c2), other.n(d2, e2, b2));
                            let t1 = Channel::new(f1, t.m1 / nt1, t.m2 / nt2);
                            let t2 = Channel::new(f2, t.m1 % nt1, t.m2 % nt2);
                            let s1 = Channel::new(b1, s.m1 / ns1, s.m2 / ns2);
                            let s2 = Channel::new(b2, s.m1 % ns1, s.m2 % ns2);
                            self.u([a1, d1, e1, c1], t1, s1) * other.u([a2, d2, e2, c2], t2, s2)
                        });
                        recoupling.push(RecouplingInput { key: [a, d, e, c], form: RecouplingForm::U, rows, cols, matrix: m });
                    }
                }
            }
        }
        let duality = (0..r)
            .map(|x| {
                let (a, b) = split(x);
                let (p, q) = (self.duality(a), other.duality(b));
                DualityData { ev: p.ev * q.ev, coev: p.coev * q.coev, pivotal: p.pivotal * q.pivotal }
            })
            .collect();
        FusionData::new(FusionInput {
            names,
            unit,
            dual: (0..r).map(|x| {
                let (a, b) = split(x);
                pair(self.dual(a), other.dual(b))
            })
            .collect(),
            dims: (0..r).map(|x| {
                let (a, b) = split(x);
                self.dim(a) * other.dim(b)
            })
            .collect(),
            fusion,
            recoupling,
            duality,
            tolerance: self.tolerance().max(other.tolerance()),
        })
    }
}
