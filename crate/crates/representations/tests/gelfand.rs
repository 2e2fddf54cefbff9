//! The Gelfand–Naimark embedding.

mod common;

use std::sync::Arc;

use algebra_objects::*;
use category_core::{FusionData, Object};
use common::*;
use representations::*;

#[test]
fn cyclic_group_algebra_embeds_isometrically() {
    let a = cz(3);
    let emb = gelfand_naimark(&a).unwrap();
    let chk = emb.isometry_check(&Object::all_simples(3), 200, 7, 1e-8).unwrap();
    assert!(chk.report.pass(), "{:?}", chk.report.checks);
    assert!(chk.max_gap <= 1e-8);
}

#[test]
fn fibonacci_endomorphism_algebra_embeds_isometrically() {
    let a = fib_bh().algebra;
    let emb = gelfand_naimark(&a).unwrap();
    for x in [Object::all_simples(2), Object::simple(2, 1), Object { mult: vec![1, 2] }] {
        let chk = emb.isometry_check(&x, 50, 3, 1e-8).unwrap();
        assert!(chk.report.pass(), "{:?}", chk.report.checks);
    }
}

#[test]
fn connected_algebra_uses_its_own_fibers() {
    let a = symmetric_enveloping(&FusionData::fibonacci()).unwrap();
    let emb = gelfand_naimark(&a).unwrap();
    assert_eq!(emb.gns.l2.dims(), a.dims().to_vec());
    let chk = emb.isometry_check(&Object::all_simples(4), 20, 1, 1e-8).unwrap();
    assert!(chk.report.pass(), "{:?}", chk.report.checks);
}

#[test]
fn matrix_algebra_is_its_regular_representation() {
    let emb = gelfand_naimark(&m2()).unwrap();
    assert_eq!(emb.gns.l2.dims(), vec![4]);
    let chk = emb.isometry_check(&Object::simple(1, 0), 50, 2, 1e-8).unwrap();
    assert!(chk.report.pass());
}

#[test]
fn sign_twisted_star_is_rejected() {
    let a = twisted_group_algebra(Arc::new(FusionData::cyclic(2))).unwrap();
    match gelfand_naimark(&a) {
        Err(RepError::NotCStar(labels)) => assert_eq!(labels, vec![1]),
        other => panic!("expected a C* failure, got {other:?}"),
    }
}
