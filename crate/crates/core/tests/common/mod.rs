//! Randomized invariant suites shared by the integration tests and the
//! acceptance run. Each returns the number of cases checked.
#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ellgen_core::identities::{required_q_slope, window_context, VerificationWindow};
use ellgen_core::localization::{partitions, tangent_weights};
use ellgen_core::series::SeriesContext;
use ellgen_core::theta::{theta_ratio, ThetaRatioSpec};
use ellgen_core::{Direction, Exponent, FieldElement, Rational, Series};

pub type SuiteResult = Result<usize, String>;

fn random_weight(rng: &mut ChaCha8Rng, dir: Direction) -> (i32, i32) {
    loop {
        let w = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        if dir.pair(w.0 as i64, w.1 as i64) != 0 {
            return w;
        }
    }
}

fn random_spec(rng: &mut ChaCha8Rng, dir: Direction, d: i64) -> ThetaRatioSpec {
    let w = random_weight(rng, dir);
    let alpha = Rational::new(rng.gen_range(0..d), d);
    let beta = Rational::new(rng.gen_range(0..d), d);
    let mut spec = ThetaRatioSpec::twisted(w, alpha, beta);
    spec.include_y_shift = rng.gen_bool(0.5);
    spec
}

fn exact_context(specs: &[ThetaRatioSpec], dq: u32, dir: Direction) -> Result<Arc<SeriesContext>, String> {
    let slope = required_q_slope(specs, dq, dir);
    let window = VerificationWindow {
        q_max: Rational::ONE,
        p_max: 0,
        t_span: 2,
    };
    window_context(dq, dir, slope, 1, &window).map_err(|e| e.to_string())
}

/// Shifting `β` by one multiplies the bare ratio by `y^{-1}`.
pub fn quasi_periodicity(cases: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dir = Direction::default();
    for i in 0..cases {
        let d = rng.gen_range(1..=4);
        let mut spec = random_spec(&mut rng, dir, d);
        spec.include_y_shift = false;
        let mut shifted = spec.clone();
        shifted.beta = &spec.beta + &Rational::ONE;
        let ctx = exact_context(&[spec.clone(), shifted.clone()], d as u32, dir)?;
        let r0 = theta_ratio(&spec, &ctx).map_err(|e| e.to_string())?;
        let r1 = theta_ratio(&shifted, &ctx).map_err(|e| e.to_string())?;
        let expected = r0
            .mul_monomial(Exponent::y(-(ctx.dy as i32)), &FieldElement::one())
            .map_err(|e| e.to_string())?;
        if r1 != expected {
            return Err(format!("case {i}: quasi-periodicity fails for {spec:?}"));
        }
    }
    Ok(cases)
}

/// Every ratio is 1 at `y = 1`.
pub fn collapse_at_y_one(cases: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dir = Direction::default();
    for i in 0..cases {
        let d = rng.gen_range(1..=4);
        let spec = random_spec(&mut rng, dir, d);
        let ctx = exact_context(std::slice::from_ref(&spec), d as u32, dir)?;
        let r = theta_ratio(&spec, &ctx)
            .and_then(|r| r.specialize_y_one())
            .map_err(|e| e.to_string())?;
        if r != Series::one(&ctx) {
            return Err(format!("case {i}: ratio at y = 1 is not 1 for {spec:?}"));
        }
    }
    Ok(cases)
}

fn random_partition(rng: &mut ChaCha8Rng) -> ellgen_core::localization::Partition {
    let n = rng.gen_range(1..=12);
    let all = partitions(n);
    all[rng.gen_range(0..all.len())].clone()
}

/// Consecutive tangent weights pair up to `(1, 1)`.
pub fn weight_pair_sums(cases: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let p = random_partition(&mut rng);
        let w = tangent_weights(&p).weights;
        if w.len() != 2 * p.size() as usize {
            return Err(format!("{p}: {} weights", w.len()));
        }
        if let Some(pair) = w.chunks(2).find(|c| (c[0].0 + c[1].0, c[0].1 + c[1].1) != (1, 1)) {
            return Err(format!("{p}: pair {pair:?} does not sum to (1,1)"));
        }
    }
    Ok(cases)
}

/// Transposing the partition swaps the two torus weights.
pub fn transpose_symmetry(cases: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let p = random_partition(&mut rng);
        let mut swapped: Vec<(i32, i32)> = tangent_weights(&p).weights.iter().map(|&(a, b)| (b, a)).collect();
        swapped.sort_unstable();
        if tangent_weights(&p.transpose()).sorted() != swapped {
            return Err(format!("{p}: transpose does not swap weights"));
        }
    }
    Ok(cases)
}

/// Box context in which truncation is a quotient by a monomial ideal, so the
/// ring axioms hold exactly for series with non-negative exponents.
pub fn ring_context() -> Arc<SeriesContext> {
    Arc::new(SeriesContext::standard(3, 2, -2, 3, Direction::default()))
}

pub fn random_series(ctx: &Arc<SeriesContext>, rng: &mut ChaCha8Rng, unit: bool) -> Series {
    let n = rng.gen_range(0..8);
    let mut terms: Vec<(Exponent, FieldElement)> = (0..n)
        .map(|_| {
            let e = Exponent {
                p: rng.gen_range(0..=2),
                q: rng.gen_range(0..=3),
                y: rng.gen_range(0..=4),
                t1: rng.gen_range(0..=3),
                t2: rng.gen_range(0..=3),
            };
            (e, FieldElement::Rational(Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=3))))
        })
        .filter(|(e, _)| !(unit && e.is_zero()))
        .collect();
    if unit {
        terms.push((Exponent::ZERO, FieldElement::from_int(rng.gen_range(1..=4))));
    }
    Series::from_terms(ctx, terms).expect("in-window terms")
}

/// Commutativity, associativity, distributivity, additive inverses and
/// two-sided inverses of unit series.
pub fn ring_axioms(cases: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = ring_context();
    let fail = |i: usize, what: &str| Err(format!("case {i}: {what}"));
    for i in 0..cases {
        let a = random_series(&ctx, &mut rng, false);
        let b = random_series(&ctx, &mut rng, false);
        let c = random_series(&ctx, &mut rng, false);
        let u = random_series(&ctx, &mut rng, true);
        let run = || -> ellgen_core::Result<Vec<(&'static str, bool)>> {
            let ab = a.mul(&b)?;
            let inv = u.invert_unit()?;
            Ok(vec![
                ("commutativity", ab == b.mul(&a)?),
                ("associativity", ab.mul(&c)? == a.mul(&b.mul(&c)?)?),
                ("distributivity", a.mul(&b.add(&c)?)? == ab.add(&a.mul(&c)?)?),
                ("additive inverse", a.add(&a.neg())?.is_empty()),
                ("unit", a.mul(&Series::one(&ctx))? == a),
                ("inverse", u.mul(&inv)? == Series::one(&ctx) && inv.mul(&u)? == Series::one(&ctx)),
            ])
        };
        match run() {
            Ok(checks) => {
                if let Some((what, _)) = checks.iter().find(|(_, ok)| !ok) {
                    return fail(i, what);
                }
            }
            Err(e) => return fail(i, &e.to_string()),
        }
    }
    Ok(cases)
}

/// Largest relative difference between the summed exact series of the
/// Hilbert scheme genus and its direct numeric fixed-point sum, over random
/// points with `|q| ≤ q_abs_max`.
///
/// The series keeps every term of grade at most `cap` at q-slope `s`, and
/// points use `|t^k| = ρ^{δ(k)}` with `ρ^s = |q|`, so each term has modulus
/// at most `ρ^{grade}`. Directions with small entries need a small slope,
/// hence a small `ρ` for a given `|q|`, and converge fastest.
pub fn numeric_cross_check(n: u32, dir: Direction, points: usize, q_abs_max: f64, cap: i64, seed: u64) -> Result<f64, String> {
    use ellgen_core::identities::{graded_context, hilb_specs};
    use ellgen_core::localization::{ell_hilb, ell_hilb_numeric};
    use ellgen_core::series::{evaluate_numeric, SeriesPoint};
    use num_complex::Complex64;

    let slope = required_q_slope(&hilb_specs(n), 1, dir);
    let q_window = i32::try_from(cap).map_err(|e| e.to_string())?;
    let ctx = graded_context(1, dir, slope, 1, cap, q_window, 0).map_err(|e| e.to_string())?;
    let series = ell_hilb(n, &ctx).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_coord = |modulus: f64, phase: f64| Complex64::new(phase, -modulus.ln() / std::f64::consts::TAU);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let q_abs: f64 = rng.gen_range(q_abs_max / 10.0..=q_abs_max);
        let rho = q_abs.powf(1.0 / slope as f64);
        let point = SeriesPoint {
            sigma: Complex64::new(0.0, 0.0),
            tau: log_coord(q_abs, rng.gen_range(0.0..1.0)),
            z: Complex64::new(rng.gen_range(0.05..0.95), rng.gen_range(-0.02..0.02)),
            u1: log_coord(rho.powi(dir.d1 as i32), rng.gen_range(0.0..1.0)),
            u2: log_coord(rho.powi(dir.d2 as i32), rng.gen_range(0.0..1.0)),
        };
        let exact = evaluate_numeric(&series, &point).value;
        let direct = ell_hilb_numeric(n, &point, 60).map_err(|e| e.to_string())?;
        worst = worst.max((exact - direct).norm() / direct.norm().max(1.0));
    }
    Ok(worst)
}
