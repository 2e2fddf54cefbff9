//! Conditional expectations, Pimsner–Popa bounds and operator-valued inner products.

use std::sync::Arc;

use algebra_objects::*;
use category_core::linalg::{self, c};
use category_core::{DMatrix, DVector, FusionData, HomElement, Object, C64};
use graded_spaces::GradedSpace;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn fib() -> Arc<FusionData> {
    Arc::new(FusionData::fibonacci())
}

fn phi() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

fn algebras() -> Vec<AlgebraObject> {
    let f = fib();
    vec![
        trivial_algebra(f.clone()),
        group_algebra(Arc::new(FusionData::cyclic(3))).unwrap(),
        endomorphism_algebra(&GradedSpace::with_dims(f.clone(), &[1, 1])).unwrap(),
        symmetric_enveloping(&FusionData::fibonacci()).unwrap(),
    ]
}

#[test]
fn expectation_is_a_unital_left_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for a in algebras() {
        let fd = a.fd().clone();
        let r = fd.rank();
        for s in fd.labels() {
            for m in [Object::simple(r, fd.unit()), Object::simple(r, r - 1), Object::all_simples(r)] {
                let e = a.conditional_expectation(s, &m);
                let (am, _) = fd.fuse_objects(&Object::simple(r, s), &m);
                let id = e.apply(&a.module_identity(&am)).unwrap();
                let diff = id.add(&a.module_identity(&m).scale(c(-1.0))).unwrap().max_abs();
                assert!(diff < TOL, "E(id) off by {diff}");
                let x = ModuleHom::from_coords(&e.target, linalg::random_vector(&mut rng, e.target.dim)).unwrap();
                let lifted = a.module_tensor_left(&Object::simple(r, s), &x);
                let back = e.apply(&lifted).unwrap();
                assert!(back.add(&x.scale(c(-1.0))).unwrap().max_abs() < 1e-8);
            }
        }
    }
}

#[test]
fn unit_algebra_expectation_is_the_normalized_trace() {
    let fd = fib();
    let a = trivial_algebra(fd.clone());
    let d = phi();
    // End(τ_A) = C·id, and E_τ(z id_τ) = tr_q(z id_τ)/d_τ = z.
    let e = a.conditional_expectation(1, &Object::simple(2, 0));
    let z = C64::new(0.3, -1.2);
    let f = a.module_identity(&Object::simple(2, 1)).scale(z);
    assert!((e.apply(&f).unwrap().coords[0] - z).norm() < TOL);
    // On End(τ⊗τ) = End(1⊕τ): E(p_c) = d_c/d_τ² · id_τ.
    let e = a.conditional_expectation(1, &Object::simple(2, 1));
    for (cc, expect) in [(0usize, 1.0 / (d * d)), (1, 1.0 / d)] {
        let mut p = HomElement::zero(&e.source.source, &e.source.source);
        p.blocks[cc][(0, 0)] = c(1.0);
        let ep = e.apply(&a.module_from_morphism(&p)).unwrap();
        let id = a.module_identity(&Object::simple(2, 1));
        assert!(ep.add(&id.scale(c(-expect))).unwrap().max_abs() < TOL);
    }
}

#[test]
fn pimsner_popa_on_fibonacci() {
    let a = trivial_algebra(fib());
    let chk = a.expectation_index_check(1, &Object::simple(2, 1), 1000, 0, 1.0).unwrap();
    assert!(chk.pass, "{:?}", chk.report.checks);
    assert!(chk.min_gap_eigenvalue >= -1e-8);
}

#[test]
fn pimsner_popa_is_tight_at_the_unit() {
    let a = trivial_algebra(fib());
    let chk = a.expectation_index_check(0, &Object::simple(2, 1), 50, 1, 1.0).unwrap();
    assert!(chk.pass);
    // index 1: E_1 is the identity, so ‖E(f)‖ = ‖f‖ and f ≤ ι(E(f)) with equality
    assert!(chk.upper_margin.abs() < 1e-8);
    assert!(chk.min_gap_eigenvalue.abs() < 1e-8);
}

#[test]
fn misnormalized_expectation_is_detected() {
    let a = trivial_algebra(fib());
    let chk = a.expectation_index_check(1, &Object::simple(2, 1), 50, 2, phi()).unwrap();
    assert!(!chk.pass);
}

#[test]
fn pimsner_popa_on_other_algebras() {
    for (k, a) in algebras().into_iter().enumerate() {
        let fd = a.fd().clone();
        let s = fd.rank() - 1;
        let chk = a.expectation_index_check(s, &Object::simple(fd.rank(), s), 40, k as u64, 1.0).unwrap();
        assert!(chk.pass, "{:?}", chk.report.checks);
    }
}

#[test]
fn group_algebra_inner_products() {
    let a = group_algebra(Arc::new(FusionData::cyclic(2))).unwrap();
    let f = DVector::from_element(1, C64::new(0.6, -0.8) * 2.0);
    let r = a.right_inner(1, &f, &f).unwrap();
    assert!((r[0] - c(4.0)).norm() < TOL);
    let l = a.left_inner(1, &f, &f).unwrap();
    assert!((l[0] - c(4.0)).norm() < TOL);
}

#[test]
fn connected_inner_product_is_a_positive_scalar() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = symmetric_enveloping(&FusionData::fibonacci()).unwrap();
    for s in a.support() {
        let f = linalg::random_vector(&mut rng, a.dim(s));
        let r = a.right_inner(s, &f, &f).unwrap();
        assert!(r[0].re > 0.0 && r[0].im.abs() < TOL);
    }
}

#[test]
fn right_inner_product_is_right_linear_and_positive() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let algs = vec![
        endomorphism_algebra(&GradedSpace::with_dims(fib(), &[2, 1])).unwrap(),
        free_algebra(fib(), &ConcreteStarAlgebra::matrix_algebra(2)).unwrap(),
        group_algebra(Arc::new(FusionData::cyclic(3))).unwrap(),
    ];
    for a in algs {
        let fd = a.fd().clone();
        let one = fd.unit();
        let base = a.endo_algebra(&Object::simple(fd.rank(), one)).unwrap();
        let rep = base.algebra.faithful_rep();
        for s in a.support() {
            let n = a.dim(s);
            let g = linalg::random_vector(&mut rng, n);
            let h = linalg::random_vector(&mut rng, n);
            let x = linalg::random_vector(&mut rng, a.dim(one));
            // h·x = d_s^{1/2} μ(h, x) along the unit-leg vertex
            let hx = a.product(s, one, s, 0, &h, &x) * c(fd.dim(s).sqrt());
            let lhs = a.right_inner(s, &g, &hx).unwrap();
            let rhs = a.product(one, one, one, 0, &a.right_inner(s, &g, &h).unwrap(), &x);
            assert!(linalg::max_abs_vec(&(lhs - rhs)) < 1e-8);
            // Gram matrices of tuples are positive in M_k(A(1))
            let k = 3;
            let fs: Vec<DVector<C64>> = (0..k).map(|_| linalg::random_vector(&mut rng, n)).collect();
            let m = base.algebra.dim();
            let mut big = DMatrix::zeros(k * m, k * m);
            for i in 0..k {
                for j in 0..k {
                    let ip = a.right_inner(s, &fs[i], &fs[j]).unwrap();
                    big.view_mut((i * m, j * m), (m, m)).copy_from(&rep.image(&ip));
                }
            }
            let herm = linalg::max_abs(&(&big - big.adjoint()));
            assert!(herm < 1e-8);
            assert!(linalg::min_eigenvalue(&big) > -1e-8);
            // scalar naturality: Gram(ψ f) = |ψ|² Gram(f)
            let psi = C64::new(0.4, 0.7);
            let a1 = a.right_inner(s, &(&fs[0] * psi), &(&fs[0] * psi)).unwrap();
            let a0 = a.right_inner(s, &fs[0], &fs[0]).unwrap() * c(psi.norm_sqr());
            assert!(linalg::max_abs_vec(&(a1 - a0)) < 1e-8);
        }
    }
}

#[test]
fn right_inner_product_matches_the_expectation_of_a_product() {
    // ⟨f|g⟩_a = d_a E_a(j(f)·g) where j(f)·g is the module composite f* ∘ g.
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let a = endomorphism_algebra(&GradedSpace::with_dims(fib(), &[1, 1])).unwrap();
    let fd = a.fd().clone();
    let s = 1;
    let f = linalg::random_vector(&mut rng, a.dim(s));
    let g = linalg::random_vector(&mut rng, a.dim(s));
    let fm = a.fiber_to_module(s, &f);
    let gm = a.fiber_to_module(s, &g);
    let prod = a.module_compose(&a.module_adjoint(&fm).unwrap(), &gm).unwrap();
    let e = a.conditional_expectation(s, &Object::simple(2, 0));
    let direct = e.apply(&prod).unwrap().coords * c(fd.dim(s));
    assert!(linalg::max_abs_vec(&(direct - a.right_inner(s, &f, &g).unwrap())) < TOL);
    // sesquilinearity
    let z = C64::new(-0.3, 1.1);
    let lhs = a.right_inner(s, &(&f * z), &g).unwrap();
    let rhs = a.right_inner(s, &f, &g).unwrap() * z.conj();
    assert!(linalg::max_abs_vec(&(lhs - rhs)) < TOL);
}
