//! Algebraic laws of the fusion-tree calculus on random morphisms.

use category_core::{linalg, FusionData, HomElement, Object, Word, WordMorphism, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_wm(fd: &FusionData, rng: &mut ChaCha8Rng, src: &Word, tgt: &Word) -> WordMorphism {
    let mut f = fd.wm_zero(src, tgt);
    for c in fd.labels() {
        let (ts, tt) = (fd.trees(src, c), fd.trees(tgt, c));
        if !ts.is_empty() && !tt.is_empty() {
            f.blocks.insert(c, linalg::random_matrix(rng, tt.len(), ts.len()));
        }
    }
    f
}

fn diff(fd: &FusionData, f: &WordMorphism, g: &WordMorphism) -> f64 {
    fd.wm_add(f, &g.clone().scale(C64::new(-1.0, 0.0))).max_abs()
}

fn categories() -> Vec<FusionData> {
    let fib = FusionData::fibonacci();
    let env = fib.deligne(&fib.mirror().unwrap()).unwrap();
    vec![fib, FusionData::cyclic(3), env]
}

fn word(fd: &FusionData, picks: &[usize]) -> Word {
    let non_unit: Vec<usize> = fd.labels().filter(|&a| a != fd.unit()).collect();
    picks.iter().map(|&p| non_unit[p % non_unit.len()]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interchange_law(seed in 0u64..1000, which in 0usize..3, w1 in prop::collection::vec(0usize..4, 0..3),
                       w2 in prop::collection::vec(0usize..4, 0..3), w3 in prop::collection::vec(0usize..4, 0..2)) {
        let fd = &categories()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, x) = (word(fd, &w1), word(fd, &w2), word(fd, &w3));
        let f1 = random_wm(fd, &mut rng, &a, &b);
        let f2 = random_wm(fd, &mut rng, &b, &a);
        let g1 = random_wm(fd, &mut rng, &x, &x);
        let g2 = random_wm(fd, &mut rng, &x, &b);
        let lhs = fd.wm_tensor(&fd.wm_compose(&f2, &f1), &fd.wm_compose(&g2, &g1));
        let rhs = fd.wm_compose(&fd.wm_tensor(&f2, &g2), &fd.wm_tensor(&f1, &g1));
        prop_assert!(diff(fd, &lhs, &rhs) < 1e-9);
    }

    #[test]
    fn tensor_associative_and_dagger(seed in 0u64..1000, which in 0usize..3, w in prop::collection::vec(0usize..4, 6)) {
        let fd = &categories()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (word(fd, &w[0..1]), word(fd, &w[1..2]));
        let (c, d) = (word(fd, &w[2..4]), word(fd, &w[4..5]));
        let e = word(fd, &w[5..6]);
        let f = random_wm(fd, &mut rng, &a, &b);
        let g = random_wm(fd, &mut rng, &c, &d);
        let h = random_wm(fd, &mut rng, &e, &a);
        let l = fd.wm_tensor(&fd.wm_tensor(&f, &g), &h);
        let r = fd.wm_tensor(&f, &fd.wm_tensor(&g, &h));
        prop_assert!(diff(fd, &l, &r) < 1e-9);
        let adj = fd.wm_adjoint(&fd.wm_tensor(&f, &g));
        let adj2 = fd.wm_tensor(&fd.wm_adjoint(&f), &fd.wm_adjoint(&g));
        prop_assert!(diff(fd, &adj, &adj2) < 1e-9);
        let id = fd.wm_tensor(&fd.wm_identity(&a), &fd.wm_identity(&c));
        let mut ac = a.clone();
        ac.extend(&c);
        prop_assert!(diff(fd, &id, &fd.wm_identity(&ac)) < 1e-9);
    }

    #[test]
    fn hom_element_dagger_laws(seed in 0u64..1000, m in prop::collection::vec(0usize..3, 4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Object { mult: vec![m[0], m[1]] };
        let y = Object { mult: vec![m[2] + 1, m[3]] };
        let f = HomElement::random(&mut rng, &x, &y);
        let g = HomElement::random(&mut rng, &y, &x);
        prop_assert!(f.adjoint().adjoint() == f);
        let gf = g.compose(&f).unwrap();
        let lhs = gf.adjoint();
        let rhs = f.adjoint().compose(&g.adjoint()).unwrap();
        prop_assert!(lhs.add(&rhs.scale(C64::new(-1.0, 0.0))).unwrap().max_abs() < 1e-12);
        // ‖f*f‖ = ‖f‖² blockwise
        for (s, b) in f.blocks.iter().enumerate() {
            if b.nrows() * b.ncols() == 0 { continue; }
            let n = linalg::op_norm(b);
            let ff = f.adjoint().compose(&f).unwrap();
            prop_assert!((linalg::op_norm(&ff.blocks[s]) - n * n).abs() < 1e-9 * (1.0 + n * n));
        }
        let id = HomElement::identity(&y);
        prop_assert!(id.compose(&f).unwrap() == f);
    }
}
