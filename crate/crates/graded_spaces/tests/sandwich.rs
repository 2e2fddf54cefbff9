//! Sandwiched spaces `X⊗H⊗Y` in the tree basis.

use std::sync::Arc;

use category_core::linalg::{self, c};
use category_core::{DMatrix, FusionData, Label, C64};
use graded_spaces::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_space(fd: &Arc<FusionData>, rng: &mut ChaCha8Rng, dims: &[usize]) -> GradedSpace {
    let grams = dims
        .iter()
        .map(|&n| {
            let a = linalg::random_matrix(rng, n, n);
            &a * a.adjoint() + DMatrix::identity(n, n) * c(0.5)
        })
        .collect();
    GradedSpace::new(fd.clone(), grams).unwrap()
}

fn random_map(rng: &mut ChaCha8Rng, h: &GradedSpace, k: &GradedSpace) -> FiberMap {
    let blocks = (0..h.rank()).map(|s| linalg::random_matrix(rng, k.dim(s), h.dim(s))).collect();
    FiberMap::new(h, k, blocks).unwrap()
}

fn categories() -> Vec<Arc<FusionData>> {
    let fib = FusionData::fibonacci();
    let env = fib.deligne(&fib.mirror().unwrap()).unwrap();
    vec![Arc::new(fib), Arc::new(FusionData::cyclic(3)), Arc::new(env)]
}

fn nonunit(fd: &FusionData, k: usize) -> Label {
    let n: Vec<Label> = fd.labels().filter(|&a| a != fd.unit()).collect();
    n[k % n.len()]
}

#[test]
fn empty_words_give_the_space_itself() {
    let fd = categories().remove(0);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let h = random_space(&fd, &mut rng, &[2, 1]);
    let s = Sandwich::new(&h, &[], &[]);
    assert!(s.space.approx_eq(&h, 1e-12));
}

#[test]
fn one_letter_matches_the_tensor_product() {
    // S([a], H, []) and yoneda(a)⊗H have the same coordinates; the yoneda basis vector
    // carries d_a^{-1/2} relative to the sandwich, so the Grams differ by d_a.
    for fd in categories() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let dims: Vec<usize> = (0..fd.rank()).map(|s| 1 + s % 2).collect();
        let h = random_space(&fd, &mut rng, &dims);
        let a = nonunit(&fd, 0);
        let s = Sandwich::new(&h, &[a], &[]);
        let ya = GradedSpace::yoneda(fd.clone(), &category_core::Object::simple(fd.rank(), a));
        let (t, _) = tensor(&ya, &h).unwrap();
        for e in 0..fd.rank() {
            assert_eq!(s.space.dim(e), t.dim(e));
            // On the unit summand the sandwich tree is id_a = d_a^{1/2} u_a, another factor d_a.
            for (k, entry) in s.entries[e].iter().enumerate() {
                let f = if entry.t == fd.unit() { fd.dim(a) * fd.dim(a) } else { fd.dim(a) };
                for l in 0..t.dim(e) {
                    assert!((s.space.gram(e)[(k, l)] - t.gram(e)[(k, l)] * c(f)).norm() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn outer_identity_is_identity() {
    for fd in categories() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_space(&fd, &mut rng, &vec![1; fd.rank()]);
        let (a, b) = (nonunit(&fd, 0), nonunit(&fd, 1));
        let s = Sandwich::new(&h, &[a, b], &[b]);
        let m = Sandwich::apply_left(&s, &s, &fd.wm_identity(&s.left)).unwrap();
        assert!(m.distance(&FiberMap::identity(&s.space)) < 1e-9);
    }
}

#[test]
fn vertex_action_of_unit_fibers() {
    // The unit letter acting through the unit-leg vertices u_t = d_t^{-1/2} id_t is the identity.
    let fd = categories().remove(0);
    let h = GradedSpace::with_dims(fd.clone(), &[1, 2]);
    let s = Sandwich::new(&h, &[], &[]);
    let f = Sandwich::vertex_action(&s, &s, fd.unit(), true, &|g, t, _| {
        (g == t).then(|| DMatrix::identity(h.dim(t), h.dim(t)) * c(fd.dim(t).powf(-0.5)))
    })
    .unwrap();
    assert!(f.distance(&FiberMap::identity(&h)) < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn extension_is_isometric_and_functorial(seed in 0u64..1000, cat in 0usize..3, k in 0usize..3, left in any::<bool>()) {
        let fd = categories().remove(cat);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims: Vec<usize> = (0..fd.rank()).map(|s| usize::from(s % 2 == 0) + 1).collect();
        let h = random_space(&fd, &mut rng, &dims);
        let a = nonunit(&fd, k);
        let s1 = Sandwich::new(&h, &[], &[a]);
        let s2 = Sandwich::new(&h, &[a], &[]);
        let f = random_map(&mut rng, &s1.space, &s2.space);
        let g = random_map(&mut rng, &s2.space, &s1.space);
        let z = [nonunit(&fd, k + 1)];
        let (_, _, ef) = Sandwich::extend(&z, &f, &s1, &s2, left).unwrap();
        let (_, _, eg) = Sandwich::extend(&z, &g, &s2, &s1, left).unwrap();
        let (_, _, egf) = Sandwich::extend(&z, &g.compose(&f).unwrap(), &s1, &s1, left).unwrap();
        let scale = f.norm().max(1.0);
        prop_assert!((ef.norm() - f.norm()).abs() < 1e-8 * scale);
        prop_assert!(egf.distance(&eg.compose(&ef).unwrap()) < 1e-8 * scale * g.norm().max(1.0));
        let (_, _, efa) = Sandwich::extend(&z, &f.adjoint(), &s2, &s1, left).unwrap();
        prop_assert!(efa.distance(&ef.adjoint()) < 1e-8 * scale);
    }

    #[test]
    fn outer_maps_compose(seed in 0u64..1000, cat in 0usize..3) {
        let fd = categories().remove(cat);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_space(&fd, &mut rng, &vec![1; fd.rank()]);
        let a = nonunit(&fd, 0);
        let b = nonunit(&fd, 1);
        let x = fd.word(&[a, b]);
        let s = Sandwich::new(&h, &x, &[a]);
        let mut w1 = fd.wm_zero(&x, &x);
        let mut w2 = fd.wm_zero(&x, &x);
        for cc in fd.tops(&x) {
            let n = fd.trees(&x, cc).len();
            w1.blocks.insert(cc, linalg::random_matrix(&mut rng, n, n));
            w2.blocks.insert(cc, linalg::random_matrix(&mut rng, n, n));
        }
        let m1 = Sandwich::apply_left(&s, &s, &w1).unwrap();
        let m2 = Sandwich::apply_left(&s, &s, &w2).unwrap();
        let m12 = Sandwich::apply_left(&s, &s, &fd.wm_compose(&w2, &w1)).unwrap();
        prop_assert!(m12.distance(&m2.compose(&m1).unwrap()) < 1e-8 * m12.max_abs().max(1.0));
        let ma = Sandwich::apply_left(&s, &s, &fd.wm_adjoint(&w1)).unwrap();
        prop_assert!(ma.distance(&m1.adjoint()) < 1e-8 * ma.max_abs().max(1.0));
    }
}

#[test]
fn vector_embedding_respects_inner_products() {
    let fd = categories().remove(0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = random_space(&fd, &mut rng, &[1, 2]);
    let s = Sandwich::new(&h, &[1], &[]);
    // ⟨α⊠ξ, α⊠η⟩ = d_e ⟨α,α⟩ ⟨ξ,η⟩/d_t with ⟨α,α⟩ = w = 1/d_e for a basis vertex.
    let v = fd.wm_vertex(1, 1, 1, 0);
    let xi = linalg::random_vector(&mut rng, 2);
    let eta = linalg::random_vector(&mut rng, 2);
    let a = s.vector(1, 1, &v, &xi);
    let b = s.vector(1, 1, &v, &eta);
    let lhs: C64 = s.space.inner(1, &a, &b);
    let rhs = h.inner(1, &xi, &eta) / c(fd.dim(1));
    assert!((lhs - rhs).norm() < 1e-9);
}
