use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{factorial, FieldElement, Rational};
use crate::series::{Series, SeriesContext, SeriesPoint};
use crate::theta::{theta_ratio, theta_ratio_numeric, ThetaRatioSpec};

use super::orbifold::{commuting_pairs, DEFAULT_PAIR_BOUND};
use super::partition::{partitions, tangent_weights};

/// How twisted-sector factors are normalized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Normalization {
    /// Each factor carries `y^{cβ}`, making it invariant under `β → β+1`.
    #[default]
    YShift,
    /// No extra factor.
    Bare,
}

impl Normalization {
    pub fn spec(self, w: (i32, i32), alpha: Rational, beta: Rational) -> ThetaRatioSpec {
        let mut s = ThetaRatioSpec::twisted(w, alpha, beta);
        s.include_y_shift = self == Normalization::YShift;
        s
    }
}

/// Expands every distinct spec once, in parallel.
pub(crate) fn theta_table(
    specs: impl IntoIterator<Item = ThetaRatioSpec>,
    ctx: &Arc<SeriesContext>,
) -> Result<HashMap<ThetaRatioSpec, Series>> {
    let mut distinct: Vec<ThetaRatioSpec> = specs.into_iter().collect();
    distinct.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    distinct.dedup();
    distinct
        .into_par_iter()
        .map(|s| theta_ratio(&s, ctx).map(|r| (s, r)))
        .collect()
}

fn product_of(table: &HashMap<ThetaRatioSpec, Series>, specs: &[ThetaRatioSpec], ctx: &Arc<SeriesContext>) -> Result<Series> {
    // multiply short factors first to keep intermediate products small
    let mut factors: Vec<&Series> = specs.iter().map(|s| &table[s]).collect();
    factors.sort_by_key(|s| s.len());
    Series::product(ctx, factors)
}

fn sum_all(ctx: &Arc<SeriesContext>, parts: Vec<Series>) -> Result<Series> {
    parts.into_iter().try_fold(Series::zero(ctx), |acc, s| acc.add(&s))
}

pub(crate) fn check_weight(w: (i32, i32), ctx: &SeriesContext, context: impl FnOnce() -> String) -> Result<()> {
    if ctx.direction.pair(w.0 as i64, w.1 as i64) == 0 {
        return Err(Error::DegenerateWeight {
            k1: w.0 as i64,
            k2: w.1 as i64,
            d1: ctx.direction.d1,
            d2: ctx.direction.d2,
            context: context(),
        });
    }
    Ok(())
}

/// Genus of C² localized at the origin.
pub fn ell_c2(ctx: &Arc<SeriesContext>) -> Result<Series> {
    theta_ratio(&ThetaRatioSpec::plain((1, 0)), ctx)?.mul(&theta_ratio(&ThetaRatioSpec::plain((0, 1)), ctx)?)
}

/// Sum over the torus-fixed points of the Hilbert scheme of `n` points.
pub fn ell_hilb(n: u32, ctx: &Arc<SeriesContext>) -> Result<Series> {
    if n == 0 {
        return Ok(Series::one(ctx));
    }
    let parts = partitions(n);
    let weights: Vec<Vec<(i32, i32)>> = parts.iter().map(|p| tangent_weights(p).weights).collect();
    for (p, ws) in parts.iter().zip(&weights) {
        for &w in ws {
            check_weight(w, ctx, || format!("partition {p}"))?;
        }
    }
    let table = theta_table(weights.iter().flatten().map(|&w| ThetaRatioSpec::plain(w)), ctx)?;
    let terms = weights
        .par_iter()
        .map(|ws| {
            let specs: Vec<ThetaRatioSpec> = ws.iter().map(|&w| ThetaRatioSpec::plain(w)).collect();
            product_of(&table, &specs, ctx)
        })
        .collect::<Result<Vec<_>>>()?;
    sum_all(ctx, terms)
}

/// Character-shifted factors of the symmetric-product orbifold: for every
/// character `(a, b)` one factor per coordinate direction of C².
fn orbifold_specs(chars: &[(Rational, Rational)], norm: Normalization) -> Vec<ThetaRatioSpec> {
    chars
        .iter()
        .flat_map(|(a, b)| {
            [(1, 0), (0, 1)].map(|w| norm.spec(w, a.clone(), b.clone()))
        })
        .collect()
}

/// Orbifold genus of `(C²)^n / S_n` at the origin, with pairs grouped by
/// their character multiset.
pub fn ell_orb_sym(n: u32, ctx: &Arc<SeriesContext>, norm: Normalization) -> Result<Series> {
    ell_orb_sym_bounded(n, ctx, norm, DEFAULT_PAIR_BOUND)
}

pub fn ell_orb_sym_bounded(n: u32, ctx: &Arc<SeriesContext>, norm: Normalization, bound: u32) -> Result<Series> {
    if n == 0 {
        return Ok(Series::one(ctx));
    }
    let mut classes: BTreeMap<Vec<(Rational, Rational)>, i64> = BTreeMap::new();
    for pair in commuting_pairs(n, bound)? {
        *classes.entry(pair.character_multiset()).or_default() += 1;
    }
    let classes: Vec<_> = classes.into_iter().collect();
    let table = theta_table(
        classes.iter().flat_map(|(chars, _)| orbifold_specs(chars, norm)),
        ctx,
    )?;
    let terms = classes
        .par_iter()
        .map(|(chars, count)| {
            product_of(&table, &orbifold_specs(chars, norm), ctx)?.scale(&FieldElement::from_int(*count))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = sum_all(ctx, terms)?;
    total.scale(&FieldElement::Rational(factorial(n).checked_inv()?))
}

/// Direct numeric fixed-point sum of the Hilbert scheme genus.
pub fn ell_hilb_numeric(n: u32, point: &SeriesPoint, l_max: u32) -> Result<Complex64> {
    partitions(n)
        .iter()
        .map(|p| {
            tangent_weights(p)
                .weights
                .iter()
                .try_fold(Complex64::new(1.0, 0.0), |acc, &w| {
                    Ok(acc * theta_ratio_numeric(&ThetaRatioSpec::plain(w), point, l_max)?)
                })
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Direction, Exponent, Grading};

    fn graded(dq: u32, q_slope: i64, cap: i64) -> Arc<SeriesContext> {
        let dir = Direction::default();
        Arc::new(SeriesContext::graded(
            dq,
            2 * dq,
            dir,
            Grading {
                q_slope,
                p_slope: 1,
                cap,
            },
            4,
            400,
            0,
        ))
    }

    #[test]
    fn c2_leading_coefficients() {
        let ctx = graded(1, 6, 12);
        let e = ell_c2(&ctx).unwrap();
        // y-numerators are over D_y = 2
        assert_eq!(e.coeff(&Exponent::y(2)), FieldElement::one());
        assert_eq!(e.coeff(&Exponent::ZERO), FieldElement::zero());
        let t1 = Exponent::t(1, 0);
        assert_eq!(e.coeff(&Exponent { y: 2, ..t1 }), FieldElement::one());
        assert_eq!(e.coeff(&t1), FieldElement::from_int(-1));
    }

    #[test]
    fn hilb_one_is_c2() {
        let ctx = graded(1, 6, 14);
        assert_eq!(ell_hilb(1, &ctx).unwrap(), ell_c2(&ctx).unwrap());
    }

    #[test]
    fn orbifold_low_degree() {
        let ctx = graded(2, 12, 14);
        assert_eq!(ell_orb_sym(1, &ctx, Normalization::YShift).unwrap(), ell_c2(&ctx).unwrap());
        let hilb = ell_hilb(2, &ctx).unwrap();
        assert_eq!(ell_orb_sym(2, &ctx, Normalization::YShift).unwrap(), hilb);
        assert_ne!(ell_orb_sym(2, &ctx, Normalization::Bare).unwrap(), hilb);
    }

    #[test]
    fn degenerate_direction_rejected() {
        let mut ctx = (*graded(1, 6, 10)).clone();
        ctx.direction = Direction { d1: 2, d2: 1 };
        // partition (3) has the weight (1, -2)
        let err = ell_hilb(3, &Arc::new(ctx)).unwrap_err();
        assert!(matches!(err, Error::DegenerateWeight { k1: 1, k2: -2, .. }), "{err}");
    }
}
