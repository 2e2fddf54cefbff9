//! Independent pentagon solver for rank-2 multiplicity-free data, written in the
//! textbook F-move convention `((ab)_e c)_d → (a(bc)_f)_d`, used as the oracle for the
//! built-in Fibonacci data.

use category_core::{linalg::max_abs, DMatrix, FusionData, C64};

const TAU: usize = 1;

fn n(a: usize, b: usize, c: usize) -> bool {
    match (a, b) {
        (0, x) | (x, 0) => x == c,
        _ => true, // τ⊗τ = 1⊕τ
    }
}

/// `F^{abc}_d[e,f]` with the all-τ block given by `x = [F11, F1τ, Fτ1, Fττ]`.
fn f(x: &[f64; 4], a: usize, b: usize, c: usize, d: usize, e: usize, g: usize) -> f64 {
    if !(n(a, b, e) && n(e, c, d) && n(b, c, g) && n(a, g, d)) {
        return 0.0;
    }
    if (a, b, c, d) == (TAU, TAU, TAU, TAU) {
        return x[2 * e + g];
    }
    1.0
}

fn pentagon_residuals(x: &[f64; 4]) -> Vec<f64> {
    let mut out = Vec::new();
    let l2 = [0usize, 1];
    for &a in &l2 {
        for &b in &l2 {
            for &c in &l2 {
                for &d in &l2 {
                    for &e in &l2 {
                        for &ff in &l2 {
                            for &g in &l2 {
                                for &k in &l2 {
                                    for &l in &l2 {
                                        let lhs = f(x, ff, c, d, e, g, l) * f(x, a, b, l, e, ff, k);
                                        let rhs: f64 = l2
                                            .iter()
                                            .map(|&h| f(x, a, b, c, g, ff, h) * f(x, a, h, d, e, g, k) * f(x, b, c, d, k, h, l))
                                            .sum();
                                        out.push(lhs - rhs);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // orthogonality of the real F-move
    out.push(x[0] * x[0] + x[1] * x[1] - 1.0);
    out.push(x[2] * x[2] + x[3] * x[3] - 1.0);
    out.push(x[0] * x[2] + x[1] * x[3]);
    out
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|r| r * r).sum::<f64>().sqrt()
}

/// Gauss–Newton from a grid of starting points; returns the distinct converged solutions.
fn solve() -> Vec<[f64; 4]> {
    let mut sols: Vec<[f64; 4]> = Vec::new();
    let grid = [-0.9, -0.4, 0.3, 0.8];
    for &p in &grid {
        for &q in &grid {
            for &r in &grid {
                for &s in &grid {
                    let mut x = [p, q, r, s];
                    for _ in 0..60 {
                        let r0 = pentagon_residuals(&x);
                        if norm(&r0) < 1e-13 {
                            break;
                        }
                        let h = 1e-6;
                        let cols: Vec<Vec<f64>> = (0..4)
                            .map(|j| {
                                let (mut xp, mut xm) = (x, x);
                                xp[j] += h;
                                xm[j] -= h;
                                let (rp, rm) = (pentagon_residuals(&xp), pentagon_residuals(&xm));
                                rp.iter().zip(&rm).map(|(a, b)| (a - b) / (2.0 * h)).collect()
                            })
                            .collect();
                        let jac = DMatrix::from_fn(r0.len(), 4, |i, j| cols[j][i]);
                        let rv = nalgebra::DVector::from_vec(r0.clone());
                        let jtj = jac.transpose() * &jac + DMatrix::identity(4, 4) * 1e-12;
                        let step = match jtj.lu().solve(&(jac.transpose() * rv)) {
                            Some(s) => s,
                            None => break,
                        };
                        for j in 0..4 {
                            x[j] -= step[j];
                        }
                    }
                    if norm(&pentagon_residuals(&x)) < 1e-10
                        && !sols.iter().any(|s| s.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-6))
                    {
                        sols.push(x);
                    }
                }
            }
        }
    }
    sols
}

#[test]
fn builtin_fibonacci_matches_a_pentagon_solution() {
    let sols = solve();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(!sols.is_empty());
    for s in &sols {
        assert!((s[0] - 1.0 / phi).abs() < 1e-8 && (s[3] + 1.0 / phi).abs() < 1e-8, "{s:?}");
        assert!((s[1].abs() - phi.powf(-0.5)).abs() < 1e-8);
    }
    let fd = FusionData::fibonacci();
    let rc = fd.recoupling([TAU, TAU, TAU, TAU]).unwrap();
    let fmat = DMatrix::from_fn(2, 2, |i, j| {
        rc.u[(i, j)] * (fd.dim(rc.cols[j].mid) / fd.dim(rc.rows[i].mid)).sqrt()
    });
    let hit = sols.iter().any(|s| {
        let m = DMatrix::from_row_slice(2, 2, &[s[0], s[1], s[2], s[3]]).map(|v| C64::new(v, 0.0));
        max_abs(&(&m - &fmat)) < 1e-9 || max_abs(&(&m.transpose() - &fmat)) < 1e-9
    });
    assert!(hit, "stored F {fmat} not among oracle solutions {sols:?}");
}

#[test]
fn flipped_sign_breaks_pentagon() {
    let fd = FusionData::fibonacci();
    let mut inp = fd.to_input();
    let blk = inp.recoupling.iter_mut().find(|b| b.key == [TAU, TAU, TAU, TAU]).unwrap();
    blk.matrix[(0, 1)] = -blk.matrix[(0, 1)];
    let bad = FusionData::new(inp).unwrap();
    let rep = bad.validate(0);
    let p = rep.get("pentagon").unwrap();
    assert!(!p.pass && p.residual > 0.1, "residual {}", p.residual);
    assert!(!rep.pass());
    assert!(rep.witnesses.iter().any(|w| w.check == "pentagon"));
}

#[test]
fn z2_and_trivial_pass_exactly() {
    let triv = FusionData::trivial();
    let rep = triv.validate(0);
    assert!(rep.pass());
    assert!(rep.checks.iter().all(|c| c.residual == 0.0));
    let z2 = FusionData::group(&["e".into(), "g".into()], &[vec![0, 1], vec![1, 0]]).unwrap();
    assert!(z2.validate(0).pass());
    for (_, rc) in z2.recoupling_blocks() {
        assert_eq!(rc.u.shape(), (1, 1));
        assert!((rc.u[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }
}

#[test]
fn fibonacci_validation_is_fast_and_tight() {
    let t = std::time::Instant::now();
    let fd = FusionData::fibonacci();
    let rep = fd.validate(0);
    assert!(t.elapsed().as_secs_f64() < 1.0);
    for name in ["pentagon", "weighted_unitarity", "zigzag_left", "zigzag_right", "balancing"] {
        assert!(rep.get(name).unwrap().residual <= 1e-9, "{name}");
    }
    assert!((fd.dim(TAU) - 1.6180339887).abs() < 1e-10);
}
