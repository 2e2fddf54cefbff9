//! Coherence checks for fusion data.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::SeedableRng;

use crate::fusion::{Channel, FusionData, Label};
use crate::hom::{HomElement, Object};
use crate::linalg::max_abs;
use crate::report::{Check, Report};

impl FusionData {
    /// Runs every coherence check; never fails, the report records residuals.
    pub fn validate(&self, seed: u64) -> Report {
        let tol = self.tolerance();
        let mut rep = Report::default();
        rep.push(Check::new("fusion_dual_rule", self.dual_rule_violations() as f64, 0.0));
        rep.push(Check::new("dimension_multiplicativity", self.dimension_residual(), tol));
        let dual_dim = self.labels().map(|a| (self.dim(a) - self.dim(self.dual(a))).abs()).fold(0.0, f64::max);
        rep.push(Check::new("perron_frobenius", self.perron_frobenius_residual(), tol.max(1e-12)));
        let below_one = self.labels().map(|a| (1.0 - self.dim(a)).max(0.0)).fold(0.0, f64::max);
        rep.push(Check::new("dimension_at_least_one", below_one, tol));
        rep.push(Check::new("dimension_duality", dual_dim, tol));
        rep.push(Check::new("unit_dimension", (self.dim(self.unit()) - 1.0).abs(), tol));
        rep.push(Check::new("unit_leg_recoupling", self.unit_leg_residual(), tol));
        rep.push(Check::new("weighted_unitarity", self.unitarity_residual(), tol));
        let (pent, worst) = self.pentagon_residual();
        rep.push(Check::new("pentagon", pent, tol));
        if pent > tol {
            if let Some(k) = worst {
                let names: Vec<&str> = k.iter().map(|&l| self.name(l)).collect();
                rep.witness("pentagon", format!("worst outer labels (a,b,d,e;c) = {:?}", names), vec![C64::new(pent, 0.0)]);
            }
        }
        let (z1, z2) = self.zigzag_residuals();
        rep.push(Check::new("zigzag_left", z1, tol));
        rep.push(Check::new("zigzag_right", z2, tol));
        rep.push(Check::new("loop_values", self.loop_residual(), tol));
        rep.push(Check::new("pivotal_consistency", self.pivotal_residual(), tol));
        let u = self.duality(self.unit());
        rep.push(Check::new("unit_duality", (u.ev - 1.0).norm().max((u.coev - 1.0).norm()), tol));
        rep.push(Check::new("balancing", self.balancing_residual(seed), tol));
        rep
    }

    pub fn dual_rule_violations(&self) -> usize {
        let mut bad = 0;
        for a in self.labels() {
            for b in self.labels() {
                let want = usize::from(b == self.dual(a));
                if self.n(a, b, self.unit()) != want {
                    bad += 1;
                }
            }
        }
        bad
    }

    pub fn dimension_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in self.labels() {
            for b in self.labels() {
                let s: f64 = self.labels().map(|c| self.n(a, b, c) as f64 * self.dim(c)).sum();
                worst = worst.max((s - self.dim(a) * self.dim(b)).abs());
            }
        }
        worst
    }

    /// `max ‖W W* − I‖` with `W = D_f^{-1/2} U D_b^{1/2}`.
    pub fn unitarity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (_, rc) in self.recoupling_blocks() {
            let w = DMatrix::from_fn(rc.rows.len(), rc.cols.len(), |i, j| {
                rc.u[(i, j)] * (self.dim(rc.cols[j].mid) / self.dim(rc.rows[i].mid)).sqrt()
            });
            let n = w.nrows();
            worst = worst.max(max_abs(&(&w * w.adjoint() - DMatrix::identity(n, n))));
        }
        worst
    }

    /// Largest pentagon defect and the outer labels where it occurs.
    pub fn pentagon_residual(&self) -> (f64, Option<[Label; 5]>) {
        let zero = C64::new(0.0, 0.0);
        let mut worst = 0.0;
        let mut at = None;
        let labels: Vec<Label> = self.labels().collect();
        for &a in &labels {
            for &b in &labels {
                for &d in &labels {
                    for &e in &labels {
                        for &c in &labels {
                            // sources: (x, μ1, μ2, y, μ3)
                            let mut sources = Vec::new();
                            for &x in &labels {
                                for &y in &labels {
                                    for m1 in 0..self.n(a, x, c) {
                                        for m2 in 0..self.n(b, y, x) {
                                            for m3 in 0..self.n(d, e, y) {
                                                sources.push((x, m1, m2, y, m3));
                                            }
                                        }
                                    }
                                }
                            }
                            if sources.is_empty() {
                                continue;
                            }
                            let mut targets = Vec::new();
                            for &g in &labels {
                                for &h in &labels {
                                    for n1 in 0..self.n(a, b, g) {
                                        for k1 in 0..self.n(g, d, h) {
                                            for k2 in 0..self.n(h, e, c) {
                                                targets.push((g, n1, h, k1, k2));
                                            }
                                        }
                                    }
                                }
                            }
                            for &(x, m1, m2, y, m3) in &sources {
                                for &(g, n1, h, k1, k2) in &targets {
                                    let mut lhs = zero;
                                    for n2 in 0..self.n(g, y, c) {
                                        lhs += self.u([a, b, y, c], Channel::new(g, n1, n2), Channel::new(x, m1, m2))
                                            * self.u([g, d, e, c], Channel::new(h, k1, k2), Channel::new(y, n2, m3));
                                    }
                                    let mut rhs = zero;
                                    for &k in &labels {
                                        for r1 in 0..self.n(b, d, k) {
                                            for r2 in 0..self.n(k, e, x) {
                                                let u1 = self.u([b, d, e, x], Channel::new(k, r1, r2), Channel::new(y, m2, m3));
                                                if u1 == zero {
                                                    continue;
                                                }
                                                for s1 in 0..self.n(a, k, h) {
                                                    rhs += u1
                                                        * self.u([a, k, e, c], Channel::new(h, s1, k2), Channel::new(x, m1, r2))
                                                        * self.u([a, b, d, h], Channel::new(g, n1, k1), Channel::new(k, s1, r1));
                                                }
                                            }
                                        }
                                    }
                                    let r = (lhs - rhs).norm();
                                    if r > worst {
                                        worst = r;
                                        at = Some([a, b, d, e, c]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        (worst, at)
    }

    /// Defects of `(1_a⊗ev_a)(coev_a⊗1_a) = 1_a` and `(ev_a⊗1_ā)(1_ā⊗coev_a) = 1_ā`.
    pub fn zigzag_residuals(&self) -> (f64, f64) {
        let (mut z1, mut z2): (f64, f64) = (0.0, 0.0);
        for a in self.labels() {
            let ab = self.dual(a);
            let wa = self.word1(a);
            let wab = self.word1(ab);
            let lhs = self.wm_compose(
                &self.wm_tensor(&self.wm_identity(&wa), &self.wm_ev(a)),
                &self.wm_tensor(&self.wm_coev(a), &self.wm_identity(&wa)),
            );
            z1 = z1.max(self.wm_add(&lhs, &self.wm_identity(&wa).scale(C64::new(-1.0, 0.0))).max_abs());
            let rhs = self.wm_compose(
                &self.wm_tensor(&self.wm_ev(a), &self.wm_identity(&wab)),
                &self.wm_tensor(&self.wm_identity(&wab), &self.wm_coev(a)),
            );
            z2 = z2.max(self.wm_add(&rhs, &self.wm_identity(&wab).scale(C64::new(-1.0, 0.0))).max_abs());
        }
        (z1, z2)
    }

    /// `ev_a ev_a* = coev_a* coev_a = d_a`.
    pub fn loop_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in self.labels() {
            let ev = self.wm_ev(a);
            let l = self.wm_scalar(&self.wm_compose(&ev, &self.wm_adjoint(&ev)));
            let co = self.wm_coev(a);
            let r = self.wm_scalar(&self.wm_compose(&self.wm_adjoint(&co), &co));
            worst = worst.max((l - self.dim(a)).norm()).max((r - self.dim(a)).norm());
        }
        worst
    }

    /// `φ_a` must satisfy `ev_ā* = (φ_a⊗1)coev_a` and be unitary.
    pub fn pivotal_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in self.labels() {
            let da = self.duality(a);
            let want = self.duality(self.dual(a)).ev.conj() / da.coev;
            worst = worst.max((da.pivotal - want).norm()).max((da.pivotal.norm() - 1.0).abs());
        }
        worst
    }

    /// Left and right traces agree on random endomorphisms of composite objects.
    pub fn balancing_residual(&self, seed: u64) -> f64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = Object { mult: vec![2; self.rank()] };
        let mut worst: f64 = 0.0;
        for _ in 0..4 {
            let psi = HomElement::random(&mut rng, &x, &x);
            let (mut left, mut right) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
            for s in self.labels() {
                let ev = self.wm_ev(s);
                let co = self.wm_coev(s);
                let l = self.wm_scalar(&self.wm_compose(&ev, &self.wm_adjoint(&ev)));
                let r = self.wm_scalar(&self.wm_compose(&self.wm_adjoint(&co), &co));
                left += l * psi.blocks[s].trace();
                right += r * psi.blocks[s].trace();
            }
            worst = worst.max((left - right).norm() / (1.0 + left.norm()));
        }
        worst
    }
}
