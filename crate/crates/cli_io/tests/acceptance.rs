//! The acceptance criteria, one line each. Every criterion runs even when an earlier one fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use algebra_objects::*;
use category_core::linalg::{c, min_eigenvalue, random_matrix};
use category_core::{DMatrix, FusionData, Object, C64};
use cp_multipliers::*;
use graded_spaces::GradedSpace;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use representations::*;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fib() -> Arc<FusionData> {
    Arc::new(FusionData::fibonacci())
}

fn cz(n: usize) -> AlgebraObject {
    group_algebra(Arc::new(FusionData::cyclic(n))).unwrap()
}

fn fib_bh() -> BhAlgebra {
    BhAlgebra::new(&GradedSpace::with_dims(fib(), &[1, 1])).unwrap()
}

fn category_validation() -> Outcome {
    let start = Instant::now();
    let fd = FusionData::fibonacci();
    let report = fd.validate(0);
    let elapsed = start.elapsed().as_secs_f64();
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    ensure((fd.dim(1) - golden).abs() <= 1e-12, format!("d_tau = {}", fd.dim(1)))?;
    ensure((fd.dim(1).powi(2) - 4.0 * (std::f64::consts::PI / 5.0).cos().powi(2)).abs() <= 1e-12, "d_tau^2 is not 4cos^2(pi/5)")?;
    let mut worst = 0.0f64;
    for name in ["pentagon", "weighted_unitarity", "zigzag_left", "zigzag_right", "balancing"] {
        let chk = report.checks.iter().find(|k| k.name == name).ok_or(format!("no {name} check"))?;
        ensure(chk.pass && chk.residual <= 1e-9, format!("{name} residual {:.3e}", chk.residual))?;
        worst = worst.max(chk.residual);
    }
    ensure(report.pass(), "a validation check failed")?;
    ensure(elapsed < 1.0, format!("took {elapsed:.2} s"))?;
    Ok(format!("d_tau = {:.10}, worst residual {worst:.1e}, {elapsed:.3} s", fd.dim(1)))
}

fn pimsner_popa() -> Outcome {
    let start = Instant::now();
    let a = trivial_algebra(fib());
    let chk = a.expectation_index_check(1, &Object::simple(2, 1), 1000, 0, 1.0).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(chk.min_gap_eigenvalue >= -1e-8, format!("min eigenvalue {:.3e}", chk.min_gap_eigenvalue))?;
    ensure(chk.lower_margin >= -1e-8 && chk.upper_margin >= -1e-8, format!("norm margins {:.3e}, {:.3e}", chk.lower_margin, chk.upper_margin))?;
    ensure(chk.pass, "index report failed")?;
    ensure(elapsed < 5.0, format!("took {elapsed:.2} s"))?;
    Ok(format!("min eigenvalue {:.2e}, {elapsed:.3} s", chk.min_gap_eigenvalue))
}

fn cstar_decision() -> Outcome {
    for k in 6..=12 {
        let tol = 10f64.powi(-k);
        let mut fd = FusionData::cyclic(2);
        fd.set_tolerance(tol);
        let fd = Arc::new(fd);
        let std = group_algebra(fd.clone()).unwrap().is_cstar().map_err(|e| e.to_string())?;
        ensure(std.is_cstar, format!("standard star rejected at {tol:e}"))?;
        let tw = twisted_group_algebra(fd).unwrap().is_cstar().map_err(|e| e.to_string())?;
        ensure(!tw.is_cstar, format!("twisted star accepted at {tol:e}"))?;
        ensure(tw.witness_labels == vec![1] && !tw.report.witnesses.is_empty(), "no negative-form witness on the g fiber")?;
    }
    Ok("standard: C*, twisted: not C* with a g-fiber witness, tolerances 1e-6..1e-12".into())
}

fn gelfand_naimark_isometry() -> Outcome {
    let mut worst = 0.0f64;
    for (name, a, x) in [("C[Z/3]", cz(3), Object::all_simples(3)), ("B(1+tau)", fib_bh().algebra, Object::all_simples(2))] {
        let emb = gelfand_naimark(&a).map_err(|e| e.to_string())?;
        let chk = emb.isometry_check(&x, 200, 7, 1e-8).map_err(|e| e.to_string())?;
        ensure(chk.max_gap <= 1e-8, format!("{name}: gap {:.3e}", chk.max_gap))?;
        worst = worst.max(chk.max_gap);
    }
    Ok(format!("max |norm gap| {worst:.1e} over 200 samples each"))
}

fn stinespring_dilation() -> Outcome {
    let a = cz(2);
    let g = Gns::new(&State::regular_trace(&a).unwrap()).unwrap();
    let lambda = Multiplier::from_representation(&g.left).unwrap();
    let theta = |t: f64| lambda.compose(&Multiplier::scaling(&a, &[c(1.0), c(t)]).unwrap()).unwrap();
    let d = stinespring(&theta(0.5), &g.left.bh).map_err(|e| e.to_string())?;
    let iso = d.v.isometry_defect();
    let recon = d.report.checks.iter().find(|k| k.name == "reconstruction").ok_or("no reconstruction check")?.residual;
    ensure(iso <= 1e-8, format!("v*v defect {iso:.3e}"))?;
    ensure(recon <= 1e-8, format!("reconstruction {recon:.3e}"))?;
    ensure(d.report.pass(), "dilation report failed")?;
    match stinespring(&theta(1.5), &g.left.bh) {
        Err(CpError::NotPositive { eigenvalue, .. }) => Ok(format!("t=0.5: v*v defect {iso:.1e}, residual {recon:.1e}; t=1.5: form eigenvalue {eigenvalue:.3}")),
        Ok(_) => Err("t = 1.5 was dilated".into()),
        Err(e) => Err(format!("t = 1.5: unexpected error {e}")),
    }
}

fn commutant_and_bicommutant() -> Outcome {
    let bh = fib_bh();
    let rep = Representation::identity(&bh);
    let comm = commutant(&rep).map_err(|e| e.to_string())?;
    let fd = bh.fd().clone();
    for cc in 0..fd.rank() {
        for d in 0..fd.rank() {
            let n = comm.hom_dims().get(&(cc, d)).copied().unwrap_or(0);
            ensure(n == usize::from(cc == d), format!("M'({cc},{d}) has dim {n}"))?;
        }
    }
    let a = cz(3);
    let g = Gns::new(&State::regular_trace(&a).unwrap()).unwrap();
    let b = bicommutant_check(&g.left).map_err(|e| e.to_string())?;
    ensure(b.dims.values().all(|(m, s)| m == s), format!("dims {:?}", b.dims))?;
    ensure(b.containment <= 1e-9, format!("containment {:.3e}", b.containment))?;
    Ok(format!("B(1+tau)' dims match C(c,d); lambda(C[Z/3])'' = span, containment {:.1e}", b.containment))
}

fn modular_conjugation_check() -> Outcome {
    let a = cz(3);
    let g = Gns::new(&State::regular_trace(&a).unwrap()).unwrap();
    let m = modular_conjugation(&g).map_err(|e| e.to_string())?;
    ensure(m.dims.values().all(|(x, y)| x == y), format!("dims {:?}", m.dims))?;
    let cont = m.report.checks.iter().find(|k| k.name == "jmj_mutual_containment").ok_or("no containment check")?;
    ensure(cont.residual <= 1e-8, format!("containment {:.3e}", cont.residual))?;
    ensure(m.report.pass(), "modular report failed")?;
    Ok(format!("JlambdaJ dims equal commutant dims in all fibers, containment {:.1e}", cont.residual))
}

fn multiplier_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for (name, a) in [("C[Z/2]", cz(2)), ("B(1+tau)", fib_bh().algebra), ("trivial(Fib)", trivial_algebra(fib()))] {
        for _ in 0..100 {
            let maps = a.dims().iter().map(|&n| random_matrix(&mut rng, n, n)).collect();
            let theta = Multiplier::new(&a, &a, maps).unwrap();
            for s in 0..a.fd().rank() {
                let back = fiber_component(&theta, s).map_err(|e| e.to_string())?;
                let err = (&back - &theta.maps[s]).iter().map(|z| z.norm()).fold(0.0, f64::max);
                ensure(err <= 1e-10, format!("{name}, fiber {s}: {err:.3e}"))?;
                worst = worst.max(err);
            }
        }
    }
    Ok(format!("max entry error {worst:.1e}"))
}

fn quantum_group_correspondence() -> Outcome {
    let fd = Arc::new(FusionData::cyclic(2));
    let a = group_algebra(fd.clone()).unwrap();
    let mut verdicts = Vec::new();
    for t in [-1.01, -1.0, -0.5, 0.0, 0.5, 1.0, 1.01] {
        let q = QGMultiplier::pointed(fd.clone(), &[c(1.0), c(t)]).map_err(|e| e.to_string())?;
        let cert = qg_state_check_with(&q, &a).map_err(|e| e.to_string())?;
        ensure(cert.ucp_agrees == Some(true), format!("disagreement at t = {t}"))?;
        ensure(cert.is_state == (t.abs() <= 1.0), format!("wrong verdict at t = {t}"))?;
        verdicts.push(if cert.is_state { '+' } else { '-' });
    }
    Ok(format!("agreement on all seven values ({})", verdicts.iter().collect::<String>()))
}

fn schur() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let tol = 1e-9;
    let (mut disagreements, mut positives) = (0, 0);
    for k in 0..500usize {
        let g = random_matrix(&mut rng, 4, 4);
        let a: DMatrix<C64> = if k % 2 == 0 {
            (&g + g.adjoint()) * c(0.5)
        } else {
            let m = &g * g.adjoint();
            let shift = min_eigenvalue(&m) * if k % 4 == 1 { 0.5 } else { 1.5 };
            m - DMatrix::identity(4, 4) * c(shift)
        };
        let direct = min_eigenvalue(&a) >= -tol;
        positives += usize::from(direct);
        if schur_criterion(&a, 20, k as u64, tol).map_err(|e| e.to_string())?.positive != direct {
            disagreements += 1;
        }
    }
    ensure(disagreements == 0, format!("{disagreements} disagreements"))?;
    Ok(format!("0 disagreements on 500 matrices ({positives} positive)"))
}

fn analytic_classification() -> Outcome {
    let t = Truncation::integers(21);
    let a = group_algebra(t.fd.clone()).unwrap();
    let factors: Vec<C64> = (0..t.fd.rank()).map(|s| c(0.8f64.powi(t.integer(s).unwrap().unsigned_abs() as i32))).collect();
    let psi = Multiplier::scaling(&a, &factors).unwrap();
    let cl = classify_multiplier(&psi, 0.05, &t).map_err(|e| e.to_string())?;
    let mut f: Vec<i64> = cl.cutoff_set.iter().map(|&s| t.integer(s).unwrap()).collect();
    f.sort();
    ensure(cl.compact, "0.8^|n| is not compact(0.05)")?;
    ensure(f == (-13..=13).collect::<Vec<_>>(), format!("cutoff set {f:?}"))?;
    let one = classify_multiplier(&Multiplier::identity(&a), 0.5, &t).map_err(|e| e.to_string())?;
    ensure(!one.compact, "the constant multiplier passed compact(0.5)")?;
    Ok("0.8^|n| compact(0.05) with F = {|n| <= 13}; constant 1 fails compact(0.5)".into())
}

/// Written to the stderr handle directly, so the lines survive test output capture.
fn line(s: String) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{s}");
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("category validation", category_validation),
        ("Pimsner-Popa", pimsner_popa),
        ("C*-decision", cstar_decision),
        ("Gelfand-Naimark", gelfand_naimark_isometry),
        ("Stinespring", stinespring_dilation),
        ("commutant/bicommutant", commutant_and_bicommutant),
        ("modular conjugation", modular_conjugation_check),
        ("multiplier roundtrip", multiplier_roundtrip),
        ("quantum-group correspondence", quantum_group_correspondence),
        ("Schur criterion", schur),
        ("analytic classification", analytic_classification),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => line(format!("criterion {:>2} PASS {name}: {detail}", k + 1)),
            Err(why) => {
                line(format!("criterion {:>2} FAIL {name}: {why}", k + 1));
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
