use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use super::core::Series;

/// A numeric point in log coordinates: each variable is `exp(2πi·v)`.
///
/// Fractional powers are taken along these logarithms, so `q^{1/2}` means
/// `exp(πi·tau)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesPoint {
    pub sigma: Complex64,
    pub tau: Complex64,
    pub z: Complex64,
    pub u1: Complex64,
    pub u2: Complex64,
}

impl SeriesPoint {
    /// Point from variable values, using principal logarithms.
    pub fn from_values(p: Complex64, q: Complex64, y: Complex64, t1: Complex64, t2: Complex64) -> Self {
        let lg = |v: Complex64| v.ln() / Complex64::new(0.0, TAU);
        SeriesPoint {
            sigma: lg(p),
            tau: lg(q),
            z: lg(y),
            u1: lg(t1),
            u2: lg(t2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericValue {
    pub value: Complex64,
    /// Estimated magnitude of the truncated tail.
    pub tail_bound: f64,
}

/// Sums the series at `point`, with coefficients embedded in C.
///
/// The tail estimate treats the omitted part as geometric: the total size of
/// the outermost shell (highest grade, or highest q-order when the context
/// has no grading) times `r/(1-r)`, where `r` is the largest per-unit decay
/// among the graded variables at this point.
pub fn evaluate_numeric(a: &Series, point: &SeriesPoint) -> NumericValue {
    let ctx = a.context();
    let i2pi = Complex64::new(0.0, TAU);
    let (dq, dy) = (ctx.dq as f64, ctx.dy as f64);
    let mut value = Complex64::new(0.0, 0.0);
    let mut shells: BTreeMap<i64, f64> = BTreeMap::new();
    for (e, c) in a.terms() {
        let arg = point.sigma * e.p as f64
            + point.tau * (e.q as f64 / dq)
            + point.z * (e.y as f64 / dy)
            + point.u1 * e.t1 as f64
            + point.u2 * e.t2 as f64;
        let term = c.embed_complex() * (i2pi * arg).exp();
        value += term;
        let shell = match ctx.grading {
            Some(_) => ctx.grade(e),
            None => e.q as i64,
        };
        *shells.entry(shell).or_default() += term.norm();
    }
    let decay = |v: Complex64, per: f64| (-TAU * v.im / per).exp();
    let used = |f: fn(&super::Exponent) -> i32| a.terms().keys().any(|e| f(e) != 0);
    let r = match ctx.grading {
        Some(g) => [
            (used(|e| e.t1), decay(point.u1, ctx.direction.d1 as f64)),
            (used(|e| e.t2), decay(point.u2, ctx.direction.d2 as f64)),
            (used(|e| e.q), decay(point.tau, dq * g.q_slope as f64)),
            (used(|e| e.p), decay(point.sigma, g.p_slope as f64)),
        ]
        .into_iter()
        .filter(|(u, _)| *u)
        .map(|(_, r)| r)
        .fold(0.0, f64::max),
        None => decay(point.tau, dq),
    };
    let tail_bound = match shells.iter().next_back() {
        Some((_, top)) if r < 1.0 => top * r / (1.0 - r),
        Some(_) => f64::INFINITY,
        None => 0.0,
    };
    NumericValue { value, tail_bound }
}
