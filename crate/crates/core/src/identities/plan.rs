use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{lcm_u64, Rational};
use crate::localization::{ak_fixed_data, partitions, tangent_weights, AkTorus};
use crate::series::{Direction, Exponent, Grading, SeriesContext, Windows};
use crate::theta::ThetaRatioSpec;

/// Region of exponents on which coefficients are compared: q up to
/// `q_max`, p in `1..=p_max` (or only p = 0 when `p_max` is 0), both t
/// exponents in `[-t_span, t_span]`, any y.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationWindow {
    pub q_max: Rational,
    pub p_max: i32,
    pub t_span: i32,
}

impl VerificationWindow {
    pub fn contains(&self, ctx: &SeriesContext, e: &Exponent) -> bool {
        let q = Rational::new(e.q as i64, ctx.dq as i64);
        q <= self.q_max
            && e.p <= self.p_max
            && e.t1.abs() <= self.t_span
            && e.t2.abs() <= self.t_span
    }

    /// Largest q-numerator inside the window over denominator `dq`.
    pub fn q_numerator(&self, dq: u32) -> Result<i32> {
        let n = (&self.q_max * &Rational::from_int(dq as i64)).floor();
        i32::try_from(n).map_err(|_| Error::InvalidContext("q window too large".into()))
    }
}

/// Bounds that make windows effectively unlimited while keeping sums of
/// two exponents inside `i32`.
const OPEN: i32 = i32::MAX / 8;

/// Smallest q-slope for which every atom of every spec has grade at least 1.
pub fn required_q_slope<'a>(specs: impl IntoIterator<Item = &'a ThetaRatioSpec>, dq: u32, dir: Direction) -> i64 {
    specs
        .into_iter()
        .map(|s| s.min_q_slope(dq, dir.pair(s.w.0 as i64, s.w.1 as i64)))
        .max()
        .unwrap_or(1)
}

/// Graded context covering `window` exactly: the cap is the largest grade
/// occurring inside the window. The q and p windows are hard cut-offs,
/// which is exact because no atom has negative q or p.
pub fn window_context(dq: u32, dir: Direction, q_slope: i64, p_slope: i64, window: &VerificationWindow) -> Result<Arc<SeriesContext>> {
    let qn = window.q_numerator(dq)?;
    let cap = p_slope * window.p_max as i64 + q_slope * qn as i64 + (dir.d1 + dir.d2) * window.t_span as i64;
    graded_context(dq, dir, q_slope, p_slope, cap, qn, window.p_max)
}

pub fn graded_context(dq: u32, dir: Direction, q_slope: i64, p_slope: i64, cap: i64, q_num_max: i32, p_max: i32) -> Result<Arc<SeriesContext>> {
    let ctx = SeriesContext {
        dq,
        dy: 2 * dq,
        windows: Windows {
            p: (0, p_max),
            q: (0, q_num_max),
            y: (-OPEN, OPEN),
            t1: (-OPEN, OPEN),
            t2: (-OPEN, OPEN),
        },
        direction: dir,
        grading: Some(Grading { q_slope, p_slope, cap }),
    };
    ctx.validate()?;
    Ok(Arc::new(ctx))
}

pub fn hilb_specs(n: u32) -> Vec<ThetaRatioSpec> {
    partitions(n)
        .iter()
        .flat_map(|p| tangent_weights(p).weights)
        .map(ThetaRatioSpec::plain)
        .collect()
}

/// Specs of all twisted sectors with shifts in `(1/d)Z` on both coordinate
/// weights, which covers every character of S_n for `d = lcm(1..n)` and of
/// Z_k for `d = k`.
pub fn twisted_specs(d: u32, weights: &[(i32, i32)]) -> Vec<ThetaRatioSpec> {
    let d = d as i64;
    let mut out = Vec::new();
    for &w in weights {
        for a in 0..d {
            for b in 0..d {
                out.push(ThetaRatioSpec::twisted(w, Rational::new(a, d), Rational::new(b, d)));
            }
        }
    }
    out
}

pub fn sym_denominator(n: u32) -> Result<u32> {
    let l = (1..=n.max(1) as u64)
        .try_fold(1u64, lcm_u64)
        .ok_or_else(|| Error::Invariant("lcm overflow".into()))?;
    u32::try_from(l).map_err(|_| Error::Invariant("lcm overflow".into()))
}

pub fn ak_specs(k: u32, torus: AkTorus) -> Result<Vec<ThetaRatioSpec>> {
    let restrict = |w: (i32, i32)| match torus {
        AkTorus::Full => w,
        AkTorus::Diagonal => (w.0 + w.1, 0),
    };
    let mut out: Vec<ThetaRatioSpec> = ak_fixed_data(k)?
        .cones
        .iter()
        .flat_map(|c| c.weights)
        .map(|w| ThetaRatioSpec::plain(restrict(w)))
        .collect();
    out.extend(twisted_specs(k, &[restrict((1, 0)), restrict((0, 1))]));
    Ok(out)
}

/// A genus together with the window on which its coefficients are final.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EllTarget {
    C2,
    Hilb(u32),
    OrbSym(u32),
    Ak(u32),
    AkOrb(u32),
}

impl EllTarget {
    pub fn denominator(self) -> Result<u32> {
        Ok(match self {
            EllTarget::C2 | EllTarget::Hilb(_) => 1,
            EllTarget::OrbSym(n) => sym_denominator(n)?,
            EllTarget::Ak(_) => 1,
            EllTarget::AkOrb(k) => k,
        })
    }

    pub fn specs(self, torus: AkTorus) -> Result<Vec<ThetaRatioSpec>> {
        Ok(match self {
            EllTarget::C2 => hilb_specs(1),
            EllTarget::Hilb(n) => hilb_specs(n),
            EllTarget::OrbSym(n) => twisted_specs(sym_denominator(n)?, &[(1, 0), (0, 1)]),
            EllTarget::Ak(k) | EllTarget::AkOrb(k) => ak_specs(k, torus)?,
        })
    }

    /// `(3, 2)` unless it pairs some weight of the target to zero, in which
    /// case `(m + 1, m)` with `m` the largest weight entry, which pairs no
    /// weight to zero.
    pub fn default_direction(self, torus: AkTorus) -> Result<Direction> {
        let specs = self.specs(torus)?;
        let dir = Direction::default();
        if specs.iter().all(|s| dir.pair(s.w.0 as i64, s.w.1 as i64) != 0) {
            return Ok(dir);
        }
        let m = specs
            .iter()
            .map(|s| s.w.0.unsigned_abs().max(s.w.1.unsigned_abs()) as i64)
            .max()
            .unwrap_or(1);
        Direction::new(m + 1, m)
    }

    /// Context in which the target is exact on `window`.
    pub fn context(self, window: &VerificationWindow, dir: Direction, torus: AkTorus) -> Result<Arc<SeriesContext>> {
        let dq = self.denominator()?;
        let specs = self.specs(torus)?;
        let slope = required_q_slope(&specs, dq, dir);
        window_context(dq, dir, slope, 1, window)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slopes() {
        let dir = Direction::default();
        // atoms q·t^{-w} with δ(w) = 3 need slope 4
        assert_eq!(required_q_slope(&hilb_specs(1), 1, dir), 4);
        // partition (1,1) has the weight (2,0) with δ = 6
        assert_eq!(required_q_slope(&hilb_specs(2), 1, dir), 7);
        assert_eq!(sym_denominator(4).unwrap(), 12);
    }

    #[test]
    fn default_direction_avoids_degenerate_weights() {
        assert_eq!(EllTarget::Hilb(4).default_direction(AkTorus::Full).unwrap(), Direction::default());
        // the partition (4,1) has the weight (2,-3)
        let d = EllTarget::Hilb(5).default_direction(AkTorus::Full).unwrap();
        assert_eq!((d.d1, d.d2), (6, 5));
        for w in hilb_specs(5).iter().map(|s| s.w) {
            assert_ne!(d.pair(w.0 as i64, w.1 as i64), 0);
        }
    }

    #[test]
    fn window_membership() {
        let w = VerificationWindow {
            q_max: Rational::ONE,
            p_max: 0,
            t_span: 2,
        };
        let ctx = window_context(2, Direction::default(), 5, 1, &w).unwrap();
        assert_eq!(ctx.windows.q, (0, 2));
        assert_eq!(ctx.grading.unwrap().cap, 5 * 2 + 5 * 2);
        assert!(w.contains(&ctx, &Exponent { q: 2, t1: -2, ..Exponent::ZERO }));
        assert!(!w.contains(&ctx, &Exponent { q: 3, ..Exponent::ZERO }));
    }
}
