mod common;

use std::sync::Arc;

use algebra_objects::*;
use category_core::linalg::{c, max_abs, random_matrix, random_vector};
use category_core::{DMatrix, FusionData, HomElement, Object};
use common::*;
use cp_multipliers::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_multiplier(a: &AlgebraObject, rng: &mut ChaCha8Rng) -> Multiplier {
    let maps = a.dims().iter().map(|&n| random_matrix(rng, n, n)).collect();
    Multiplier::new(a, a, maps).unwrap()
}

fn random_hom(a: &AlgebraObject, x: &Object, y: &Object, rng: &mut ChaCha8Rng) -> ModuleHom {
    let basis = a.module_hom_space(x, y);
    ModuleHom::from_coords(&basis, random_vector(rng, basis.dim)).unwrap()
}

fn algebras() -> Vec<AlgebraObject> {
    vec![cz(2), fib_bh().algebra, symmetric_enveloping(&FusionData::fibonacci()).unwrap()]
}

fn objects(r: usize) -> Vec<Object> {
    let mut out: Vec<Object> = (0..r).map(|a| Object::simple(r, a)).collect();
    out.push(Object::all_simples(r));
    out
}

#[test]
fn identity_amplifies_to_identity() {
    for a in algebras() {
        let r = a.fd().rank();
        for x in objects(r) {
            for y in objects(r) {
                let m = amplify(&Multiplier::identity(&a), &x, &y).matrix;
                assert!(max_abs(&(&m - DMatrix::identity(m.nrows(), m.ncols()))) < 1e-14);
            }
        }
    }
}

#[test]
fn fiber_components_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for a in algebras() {
        for _ in 0..100 {
            let theta = random_multiplier(&a, &mut rng);
            for s in 0..a.fd().rank() {
                let back = fiber_component(&theta, s).unwrap();
                let err = if back.is_empty() { 0.0 } else { max_abs(&(&back - &theta.maps[s])) };
                assert!(err <= 1e-10, "fiber {s}: {err}");
            }
        }
    }
}

#[test]
fn z2_amplification_on_the_regular_object() {
    // End((1 ⊕ g)_A) ≅ M_2(C); θ = (1, t) acts by Schur multiplication with [[1, t], [t, 1]].
    let fd = Arc::new(FusionData::cyclic(2));
    let a = group_algebra(fd.clone()).unwrap();
    let x = Object::all_simples(2);
    let t = 0.37;
    let theta = Multiplier::scaling(&a, &[c(1.0), c(t)]).unwrap();
    let amp = amplify(&theta, &x, &x);
    let proj = |k: usize| {
        let mut p = HomElement::zero(&x, &x);
        p.blocks[k][(0, 0)] = c(1.0);
        a.module_from_morphism(&p)
    };
    let (p1, pg) = (proj(0), proj(1));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let f = random_hom(&a, &x, &x, &mut rng);
        let part = |p: &ModuleHom, q: &ModuleHom| a.module_compose(p, &a.module_compose(&f, q).unwrap()).unwrap();
        let diag = part(&p1, &p1).add(&part(&pg, &pg)).unwrap();
        let off = part(&p1, &pg).add(&part(&pg, &p1)).unwrap();
        let expect = diag.add(&off.scale(c(t))).unwrap();
        let got = amp.apply(&f).unwrap();
        assert!(got.add(&expect.scale(c(-1.0))).unwrap().max_abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn amplification_is_a_multiplier(seed in 0u64..1000, which in 0usize..3) {
        let a = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta = random_multiplier(a, &mut rng);
        let r = a.fd().rank();
        let (x, y, z, w) = (Object::all_simples(r), Object::simple(r, r - 1), Object::all_simples(r), Object::simple(r, 0));
        let f = random_hom(a, &x, &y, &mut rng);
        // Θ(ψ ∘ f ∘ φ) = ψ ∘ Θ(f) ∘ φ for ψ, φ from C.
        let psi = a.module_from_morphism(&HomElement::random(&mut rng, &y, &z));
        let phi = a.module_from_morphism(&HomElement::random(&mut rng, &w, &x));
        let lhs = amplify(&theta, &w, &z).apply(&a.module_compose(&psi, &a.module_compose(&f, &phi).unwrap()).unwrap()).unwrap();
        let mid = amplify(&theta, &x, &y).apply(&f).unwrap();
        let rhs = a.module_compose(&psi, &a.module_compose(&mid, &phi).unwrap()).unwrap();
        prop_assert!(lhs.add(&rhs.scale(c(-1.0))).unwrap().max_abs() < 1e-9);
        // Θ(1_e ⊗ f) = 1_e ⊗ Θ(f).
        for e in 0..r {
            let eo = Object::simple(r, e);
            let tf = a.module_tensor_left(&eo, &f);
            let lhs = amplify(&theta, tf.source(), tf.target()).apply(&tf).unwrap();
            let rhs = a.module_tensor_left(&eo, &mid);
            prop_assert!(lhs.add(&rhs.scale(c(-1.0))).unwrap().max_abs() < 1e-9);
        }
    }
}
