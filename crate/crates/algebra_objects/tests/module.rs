//! Composition, dagger and endomorphism algebras of the module category `M_A`.

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

fn random_hom(rng: &mut ChaCha8Rng, basis: &Arc<ModuleBasis>) -> ModuleHom {
    ModuleHom::from_coords(basis, linalg::random_vector(rng, basis.dim)).unwrap()
}

fn sample_algebras() -> Vec<AlgebraObject> {
    let f = fib();
    let h = GradedSpace::with_dims(f.clone(), &[1, 1]);
    let z3 = Arc::new(FusionData::cyclic(3));
    let hz = GradedSpace::with_dims(z3.clone(), &[1, 0, 1]);
    vec![
        trivial_algebra(f.clone()),
        group_algebra(Arc::new(FusionData::cyclic(2))).unwrap(),
        endomorphism_algebra(&h).unwrap(),
        endomorphism_algebra(&hz).unwrap(),
        symmetric_enveloping(&FusionData::fibonacci()).unwrap(),
    ]
}

fn objects(fd: &FusionData) -> Vec<Object> {
    let r = fd.rank();
    let mut out: Vec<Object> = (0..r).map(|a| Object::simple(r, a)).collect();
    out.push(Object::all_simples(r));
    let mut two = Object::zero(r);
    two.mult[r - 1] = 2;
    out.push(two);
    out
}

#[test]
fn hom_space_dimensions() {
    for a in sample_algebras() {
        let fd = a.fd().clone();
        for x in objects(&fd) {
            for y in objects(&fd) {
                let mut expect = 0;
                for s in a.support() {
                    let (ys, _) = fd.fuse_objects(&y, &Object::simple(fd.rank(), s));
                    expect += a.dim(s) * fd.hom_dim(&x, &ys);
                }
                assert_eq!(a.module_hom_space(&x, &y).dim, expect);
            }
        }
    }
}

#[test]
fn unit_algebra_reduces_to_the_category() {
    let fd = fib();
    let a = trivial_algebra(fd.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = Object { mult: vec![1, 2] };
    let y = Object { mult: vec![2, 1] };
    assert_eq!(a.module_hom_space(&x, &y).dim, fd.hom_dim(&x, &y));
    let f = HomElement::random(&mut rng, &x, &y);
    let g = HomElement::random(&mut rng, &y, &x);
    let lhs = a.module_compose(&a.module_from_morphism(&g), &a.module_from_morphism(&f)).unwrap();
    let rhs = a.module_from_morphism(&g.compose(&f).unwrap());
    assert!(lhs.add(&rhs.scale(c(-1.0))).unwrap().max_abs() < TOL);
    let adj = a.module_adjoint(&a.module_from_morphism(&f)).unwrap();
    let rhs = a.module_from_morphism(&f.adjoint());
    assert!(adj.add(&rhs.scale(c(-1.0))).unwrap().max_abs() < TOL);
}

#[test]
fn identities_associativity_and_dagger() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for a in sample_algebras() {
        let fd = a.fd().clone();
        let obs = objects(&fd);
        let (x, y, z, w) = (&obs[0], &obs[obs.len() - 2], &obs[1 % obs.len()], &obs[obs.len() - 1]);
        let f = random_hom(&mut rng, &a.module_hom_space(x, y));
        let g = random_hom(&mut rng, &a.module_hom_space(y, z));
        let h = random_hom(&mut rng, &a.module_hom_space(z, w));
        let scale = f.max_abs().max(g.max_abs()).max(h.max_abs()).max(1.0);
        let diff = |p: &ModuleHom, q: &ModuleHom| p.add(&q.scale(c(-1.0))).unwrap().max_abs();
        assert!(diff(&a.module_compose(&a.module_identity(y), &f).unwrap(), &f) < TOL * scale);
        assert!(diff(&a.module_compose(&f, &a.module_identity(x)).unwrap(), &f) < TOL * scale);
        let l = a.module_compose(&h, &a.module_compose(&g, &f).unwrap()).unwrap();
        let r = a.module_compose(&a.module_compose(&h, &g).unwrap(), &f).unwrap();
        assert!(diff(&l, &r) < 1e-8 * scale.powi(3));
        let fss = a.module_adjoint(&a.module_adjoint(&f).unwrap()).unwrap();
        assert!(diff(&fss, &f) < TOL * scale);
        let gf_star = a.module_adjoint(&a.module_compose(&g, &f).unwrap()).unwrap();
        let fs_gs = a.module_compose(&a.module_adjoint(&f).unwrap(), &a.module_adjoint(&g).unwrap()).unwrap();
        assert!(diff(&gf_star, &fs_gs) < 1e-8 * scale * scale);
        let id = a.module_identity(w);
        assert!(diff(&a.module_adjoint(&id).unwrap(), &id) < TOL);
    }
}

#[test]
fn endomorphism_algebras_are_star_algebras() {
    for a in sample_algebras() {
        let fd = a.fd().clone();
        for x in objects(&fd) {
            let e = a.endo_algebra(&x).unwrap();
            let r = e.algebra.check(1e-8);
            assert!(r.pass(), "{:?}", r.checks);
        }
    }
}

#[test]
fn translation_in_the_group_algebra() {
    let fd = Arc::new(FusionData::cyclic(2));
    let a = group_algebra(fd.clone()).unwrap();
    let (e, g) = (Object::simple(2, 0), Object::simple(2, 1));
    let basis = a.module_hom_space(&e, &g);
    assert_eq!(basis.dim, 1);
    let t = ModuleHom::from_coords(&basis, DVector::from_element(1, c(1.0))).unwrap();
    let back = a.module_hom_space(&g, &e);
    let t_inv = ModuleHom::from_coords(&back, DVector::from_element(1, c(1.0))).unwrap();
    let sq = a.module_compose(&t_inv, &t).unwrap();
    assert!(sq.add(&a.module_identity(&e).scale(c(-1.0))).unwrap().max_abs() < TOL);
    let adj = a.module_adjoint(&t).unwrap();
    assert!(adj.add(&t_inv.scale(c(-1.0))).unwrap().max_abs() < TOL);
}

fn is_full_matrix_algebra(alg: &ConcreteStarAlgebra, n: usize) -> bool {
    // dimension n² and trivial center
    let d = alg.dim();
    if d != n * n {
        return false;
    }
    let mut rows = Vec::new();
    for k in 0..d {
        let right = DMatrix::from_fn(d, d, |i, j| alg.left[j][(i, k)]);
        rows.push(&alg.left[k] - right);
    }
    let mut stacked = DMatrix::<C64>::zeros(d * d, d);
    for (k, m) in rows.iter().enumerate() {
        stacked.view_mut((k * d, 0), (d, d)).copy_from(m);
    }
    linalg::nullspace(&stacked, 1e-9).ncols() == 1
}

#[test]
fn endomorphism_algebra_examples() {
    let fd = fib();
    let a = trivial_algebra(fd.clone());
    assert_eq!(a.endo_algebra(&Object::simple(2, 1)).unwrap().algebra.dim(), 1);
    let e = a.endo_algebra(&Object { mult: vec![0, 2] }).unwrap();
    assert!(is_full_matrix_algebra(&e.algebra, 2));
    let z2 = group_algebra(Arc::new(FusionData::cyclic(2))).unwrap();
    let e = z2.endo_algebra(&Object::all_simples(2)).unwrap();
    assert!(is_full_matrix_algebra(&e.algebra, 2));
}

#[test]
fn symmetric_enveloping_hom_dimensions() {
    for fd in [FusionData::cyclic(2), FusionData::fibonacci()] {
        let b = symmetric_enveloping(&fd).unwrap();
        let r = fd.rank();
        let env = b.fd().clone();
        for (p, q) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
            for (u, v) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
                let x = Object::simple(env.rank(), p * r + q);
                let y = Object::simple(env.rank(), u * r + v);
                let (pq, _) = fd.fuse_objects(&Object::simple(r, p), &Object::simple(r, q));
                let (uv, _) = fd.fuse_objects(&Object::simple(r, u), &Object::simple(r, v));
                assert_eq!(b.module_hom_space(&x, &y).dim, fd.hom_dim(&pq, &uv), "({p},{q}) → ({u},{v})");
            }
        }
    }
}

#[test]
fn tensoring_with_an_object_is_a_star_functor() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for a in sample_algebras() {
        let fd = a.fd().clone();
        let obs = objects(&fd);
        let e = &obs[obs.len() - 3];
        let (x, y, z) = (&obs[0], &obs[obs.len() - 1], &obs[obs.len() - 2]);
        let f = random_hom(&mut rng, &a.module_hom_space(x, y));
        let g = random_hom(&mut rng, &a.module_hom_space(y, z));
        let lhs = a.module_tensor_left(e, &a.module_compose(&g, &f).unwrap());
        let rhs = a.module_compose(&a.module_tensor_left(e, &g), &a.module_tensor_left(e, &f)).unwrap();
        let scale = (f.max_abs() * g.max_abs()).max(1.0);
        assert!(lhs.add(&rhs.scale(c(-1.0))).unwrap().max_abs() < 1e-8 * scale);
        let s1 = a.module_tensor_left(e, &a.module_adjoint(&f).unwrap());
        let s2 = a.module_adjoint(&a.module_tensor_left(e, &f)).unwrap();
        assert!(s1.add(&s2.scale(c(-1.0))).unwrap().max_abs() < 1e-8 * f.max_abs().max(1.0));
        let id = a.module_tensor_left(e, &a.module_identity(x));
        assert!(id.add(&a.module_identity(&id.basis.source).scale(c(-1.0))).unwrap().max_abs() < TOL);
    }
}

#[test]
fn endomorphism_products_match_module_composition() {
    for a in sample_algebras() {
        let fd = a.fd().clone();
        for x in objects(&fd) {
            let e = a.endo_algebra(&x).unwrap();
            let n = e.algebra.dim();
            for k in 0..n {
                for l in 0..n {
                    let direct = a.module_compose(&e.hom(&e.algebra.basis(k)), &e.hom(&e.algebra.basis(l))).unwrap();
                    let table = e.algebra.mul(&e.algebra.basis(k), &e.algebra.basis(l));
                    assert!(category_core::linalg::max_abs_vec(&(direct.coords - table)) < TOL);
                }
            }
        }
    }
}
