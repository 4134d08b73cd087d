mod common;

use ellgen_core::Direction;

#[test]
fn exact_series_matches_direct_sum() {
    for n in [1, 2] {
        let err = common::numeric_cross_check(n, Direction::default(), 5, 0.005, 45, n as u64).unwrap();
        assert!(err <= 1e-8, "n = {n}: {err:e}");
    }
}

#[test]
fn truncation_error_shrinks_with_the_cap() {
    let coarse = common::numeric_cross_check(1, Direction::default(), 3, 0.05, 12, 9).unwrap();
    let fine = common::numeric_cross_check(1, Direction::default(), 3, 0.05, 40, 9).unwrap();
    assert!(fine < coarse * 1e-3, "{coarse:e} -> {fine:e}");
}
