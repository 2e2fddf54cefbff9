mod common;

use std::sync::Arc;

use algebra_objects::{group_algebra, trivial_algebra};
use category_core::linalg::c;
use category_core::FusionData;
use common::*;
use cp_multipliers::*;

fn geometric(trunc: &Truncation, r: f64) -> Multiplier {
    let a = group_algebra(trunc.fd.clone()).unwrap();
    let factors: Vec<_> = (0..trunc.fd.rank()).map(|s| c(r.powi(trunc.integer(s).unwrap().unsigned_abs() as i32))).collect();
    Multiplier::scaling(&a, &factors).unwrap()
}

#[test]
fn integer_truncation_labels() {
    let t = Truncation::integers(3);
    assert_eq!(t.fd.rank(), 7);
    for k in -3..=3 {
        let s = t.label(k).unwrap();
        assert_eq!(t.integer(s), Some(k));
    }
    let mut b: Vec<i64> = t.boundary.iter().map(|&s| t.integer(s).unwrap()).collect();
    b.sort();
    assert_eq!(b, vec![-3, 3]);
    assert_eq!(t.label(4), None);
}

#[test]
fn identity_on_a_fusion_category_is_finite_rank() {
    let fd = fib();
    let a = trivial_algebra(fd.clone());
    let cl = classify_multiplier(&Multiplier::identity(&a), 0.5, &Truncation::finite(fd)).unwrap();
    assert!(cl.finite_rank && cl.compact);
    assert_eq!(cl.support, vec![0]);
}

#[test]
fn geometric_decay_is_compact_but_not_finite_rank() {
    let t = Truncation::integers(21);
    let m = geometric(&t, 0.8);
    for eps in [0.5, 0.2, 0.05, 0.01] {
        let cl = classify_multiplier(&m, eps, &t).unwrap();
        assert!(cl.compact, "eps = {eps}");
        assert!(!cl.finite_rank);
    }
    let cl = classify_multiplier(&m, 0.05, &t).unwrap();
    let mut f: Vec<i64> = cl.cutoff_set.iter().map(|&s| t.integer(s).unwrap()).collect();
    f.sort();
    assert_eq!(f, (-13..=13).collect::<Vec<_>>());
    for (s, n) in cl.norms.iter().enumerate() {
        assert!((n - 0.8f64.powi(t.integer(s).unwrap().unsigned_abs() as i32)).abs() < 1e-12);
    }
}

#[test]
fn identity_on_the_integers_is_not_compact() {
    for w in [5, 13, 21] {
        let t = Truncation::integers(w);
        let a = group_algebra(t.fd.clone()).unwrap();
        for eps in [0.99, 0.5, 0.1] {
            assert!(!classify_multiplier(&Multiplier::identity(&a), eps, &t).unwrap().compact);
        }
    }
}

#[test]
fn finitely_supported_multipliers_are_finite_rank() {
    let t = Truncation::integers(10);
    let a = group_algebra(t.fd.clone()).unwrap();
    let factors: Vec<_> = (0..t.fd.rank()).map(|s| if t.integer(s).unwrap().abs() <= 2 { c(1.0) } else { c(0.0) }).collect();
    let cl = classify_multiplier(&Multiplier::scaling(&a, &factors).unwrap(), 0.5, &t).unwrap();
    assert!(cl.finite_rank && cl.compact);
    assert_eq!(cl.support.len(), 5);
}

#[test]
fn non_connected_algebras_are_refused() {
    let bh = fib_bh();
    assert!(classify_multiplier(&Multiplier::identity(&bh.algebra), 0.5, &Truncation::finite(fib())).is_err());
}

#[test]
fn constant_net_has_zero_residuals() {
    let t = Truncation::integers(6);
    let a = group_algebra(t.fd.clone()).unwrap();
    let id = Multiplier::identity(&a);
    let p = convergence_probe(&vec![id.clone(); 4], &id, &[0, 1]).unwrap();
    assert!(p.uniform.iter().all(|&u| u == 0.0));
    assert!(p.pointwise.iter().flatten().all(|&u| u == 0.0));
    assert!(p.uniform_follows_pointwise);
}

#[test]
fn geometric_net_converges_pointwise_only() {
    let t = Truncation::integers(21);
    let rs = [0.5, 0.8, 0.9, 0.95, 0.99];
    let net: Vec<Multiplier> = rs.iter().map(|&r| geometric(&t, r)).collect();
    let a = group_algebra(t.fd.clone()).unwrap();
    let window: Vec<_> = (-2..=2).map(|k| t.label(k).unwrap()).collect();
    let p = convergence_probe(&net, &Multiplier::identity(&a), &window).unwrap();
    // Residual at n is 1 − r^{|n|}.
    for (k, &r) in rs.iter().enumerate() {
        assert!((p.pointwise_window[k] - (1.0 - r * r)).abs() < 1e-12);
        assert!((p.uniform[k] - (1.0 - r.powi(21))).abs() < 1e-12);
    }
    assert!(p.pointwise_window.last().unwrap() < &0.03);
    assert!(p.uniform.last().unwrap() > &0.15);
    assert!(!p.uniform_follows_pointwise);
}

#[test]
fn finite_groups_converge_uniformly() {
    let fd = Arc::new(FusionData::cyclic(4));
    let a = group_algebra(fd.clone()).unwrap();
    let net: Vec<Multiplier> = [0.5, 0.9, 0.99]
        .iter()
        .map(|&r| Multiplier::scaling(&a, &[c(1.0), c(r), c(r * r), c(r)]).unwrap())
        .collect();
    let p = convergence_probe(&net, &Multiplier::identity(&a), &[0, 1, 2, 3]).unwrap();
    assert!(p.uniform_follows_pointwise);
    assert_eq!(p.uniform, p.pointwise_window);
}
