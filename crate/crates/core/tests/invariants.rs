mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ellgen_core::localization::{partitions, tangent_weights};

#[test]
fn theta_quasi_periodicity() {
    common::quasi_periodicity(100, 1).unwrap();
}

#[test]
fn theta_collapse_at_y_one() {
    common::collapse_at_y_one(100, 2).unwrap();
}

#[test]
fn weight_pairs_and_transposes() {
    common::weight_pair_sums(100, 3).unwrap();
    common::transpose_symmetry(100, 4).unwrap();
}

#[test]
fn series_ring_axioms() {
    common::ring_axioms(100, 5).unwrap();
}

proptest! {
    #[test]
    fn every_partition_has_balanced_weights(n in 1u32..10, pick in 0usize..1000) {
        let all = partitions(n);
        let p = &all[pick % all.len()];
        let w = tangent_weights(p).weights;
        let total = w.iter().fold((0, 0), |acc, x| (acc.0 + x.0, acc.1 + x.1));
        prop_assert_eq!(total, (n as i32, n as i32));
    }

    #[test]
    fn ring_axioms_for_any_seed(seed in any::<u64>()) {
        let ctx = common::ring_context();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_series(&ctx, &mut rng, false);
        let b = common::random_series(&ctx, &mut rng, false);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.sub(&b).unwrap().add(&b).unwrap(), a);
    }
}

#[test]
fn ratios_in_the_suites_are_nontrivial() {
    use ellgen_core::identities::{required_q_slope, window_context, VerificationWindow};
    use ellgen_core::theta::{theta_ratio, ThetaRatioSpec};
    use ellgen_core::{Direction, Rational};
    let spec = ThetaRatioSpec::twisted((1, -2), Rational::new(1, 3), Rational::new(2, 3));
    let dir = Direction::default();
    let w = VerificationWindow { q_max: Rational::ONE, p_max: 0, t_span: 2 };
    let ctx = window_context(3, dir, required_q_slope([&spec], 3, dir), 1, &w).unwrap();
    let r = theta_ratio(&spec, &ctx).unwrap();
    assert!(r.terms().keys().any(|e| e.q > 0 && e.t1 != 0), "{}", r.len());
}
