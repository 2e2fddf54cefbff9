use category_core::linalg::{c, max_abs, min_eigenvalue, random_matrix};
use category_core::{DMatrix, C64};
use cp_multipliers::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

#[test]
fn identity_is_positive() {
    let r = schur_criterion(&DMatrix::identity(4, 4), 50, 0, TOL).unwrap();
    assert!(r.positive && r.violating.is_none());
    assert!(r.sampled_min >= -TOL);
}

#[test]
fn indefinite_two_by_two_has_a_violating_b() {
    let a = DMatrix::from_row_slice(2, 2, &[c(1.0), c(2.0), c(2.0), c(1.0)]);
    let r = schur_criterion(&a, 0, 0, TOL).unwrap();
    assert!(!r.positive);
    let b = r.violating.unwrap();
    // z = (1, −1)/√2 gives B = ½[[1, −1], [−1, 1]] and v(B⋆A)v* = 1 − 2 = −1.
    let expect = DMatrix::from_row_slice(2, 2, &[c(0.5), c(-0.5), c(-0.5), c(0.5)]);
    assert!(max_abs(&(&b - &expect)) < 1e-12);
    let pairing: C64 = b.iter().zip(a.iter()).map(|(x, y)| x * y).sum();
    assert!((pairing - c(-1.0)).norm() < 1e-12);
    assert!(min_eigenvalue(&b) > -1e-12);
}

#[test]
fn non_square_is_an_error() {
    assert!(matches!(schur_criterion(&DMatrix::zeros(2, 3), 1, 0, TOL), Err(CpError::Shape(_))));
}

#[test]
fn non_hermitian_matrices_are_not_positive() {
    let a = DMatrix::from_row_slice(2, 2, &[c(1.0), C64::new(0.0, 0.5), c(0.0), c(1.0)]);
    assert!(!schur_criterion(&a, 20, 1, TOL).unwrap().positive);
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, k: usize) -> DMatrix<C64> {
    let g = random_matrix(rng, n, n);
    if k.is_multiple_of(2) {
        (&g + g.adjoint()) * c(0.5)
    } else {
        // Gram matrix, shifted so that both signs of the bottom eigenvalue occur.
        let m = &g * g.adjoint();
        let shift = min_eigenvalue(&m) * if k % 4 == 1 { 0.5 } else { 1.5 };
        m - DMatrix::identity(n, n) * c(shift)
    }
}

#[test]
fn agrees_with_eigenvalues_on_random_hermitian_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut disagreements = 0;
    let mut positives = 0;
    for k in 0..500 {
        let a = random_hermitian(&mut rng, 4, k);
        let direct = min_eigenvalue(&a) >= -TOL;
        positives += direct as usize;
        if schur_criterion(&a, 20, k as u64, TOL).unwrap().positive != direct {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
    assert!(positives > 50 && positives < 450);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schur_products_of_positive_matrices_are_positive(seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (random_matrix(&mut rng, 3, 3), random_matrix(&mut rng, 3, 3));
        let (a, b) = (&g * g.adjoint(), &h * h.adjoint());
        let prod = a.component_mul(&b);
        prop_assert!(min_eigenvalue(&prod) >= -1e-9 * max_abs(&prod).max(1.0));
        let r = schur_criterion(&a, 16, seed, TOL).unwrap();
        prop_assert!(r.positive && r.sampled_min >= -TOL * max_abs(&a).max(1.0));
    }
}
