use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::context::{Exponent, SeriesContext};
use super::core::{is_pure_y, Series};
use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational};

/// A coefficient times a monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub exp: Exponent,
    pub coeff: FieldElement,
}

impl Monomial {
    pub fn new(exp: Exponent, coeff: FieldElement) -> Self {
        Monomial { exp, coeff }
    }

    pub fn unit(exp: Exponent) -> Self {
        Monomial {
            exp,
            coeff: FieldElement::one(),
        }
    }

    pub fn inverse(&self) -> Result<Monomial> {
        Ok(Monomial {
            exp: -self.exp,
            coeff: self.coeff.checked_inv()?,
        })
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        Ok(Monomial {
            exp: self.exp + other.exp,
            coeff: self.coeff.checked_mul(&other.coeff)?,
        })
    }
}

/// Rejects monomials whose grade is too small for exact graded truncation.
pub(crate) fn check_atom(ctx: &SeriesContext, e: &Exponent) -> Result<()> {
    if ctx.grading.is_some() && !is_pure_y(e) && ctx.grade(e) < 1 {
        return Err(Error::GradingTooWeak {
            monomial: ctx.fmt_monomial(e),
            grade: ctx.grade(e),
        });
    }
    Ok(())
}

/// Σ_{j≥0} M^j for a small monomial M, truncated.
fn geometric(ctx: &Arc<SeriesContext>, m: &Monomial) -> Result<Series> {
    check_atom(ctx, &m.exp)?;
    let mut terms = BTreeMap::new();
    let mut e = Exponent::ZERO;
    let mut c = FieldElement::one();
    // exponents along j form a line, so the in-window j form an interval
    // that starts at 0
    while ctx.keeps(&e) {
        terms.insert(e, c.clone());
        e = e + m.exp;
        c = c.checked_mul(&m.coeff)?;
        if m.exp.is_zero() {
            break;
        }
    }
    Ok(Series::from_map_unchecked(ctx, terms))
}

/// `1 - M` as a series.
pub fn one_minus(ctx: &Arc<SeriesContext>, m: &Monomial) -> Result<Series> {
    let mut s = Series::one(ctx);
    s.add_term(m.exp, &m.coeff.neg_ref())?;
    Ok(s)
}

/// Expansion of `1/(1 - M)` under the direction policy.
///
/// M is small when its (p, q, δ(t)) is lexicographically positive; then the
/// geometric series is used. Otherwise `1/(1-M) = -M⁻¹/(1-M⁻¹)`.
pub fn expand_binomial_inverse(ctx: &Arc<SeriesContext>, m: &Monomial) -> Result<Series> {
    if m.exp.is_zero() {
        let denom = FieldElement::one().checked_sub(&m.coeff)?;
        return Ok(Series::constant(ctx, denom.checked_inv()?));
    }
    match ctx.smallness(&m.exp) {
        Ordering::Greater => geometric(ctx, m),
        Ordering::Less => {
            let inv = m.inverse()?;
            geometric(ctx, &inv)?.mul_monomial(inv.exp, &inv.coeff.neg_ref())
        }
        Ordering::Equal => Err(Error::AmbiguousDirection(ctx.fmt_monomial(&m.exp))),
    }
}

/// Convenience form taking the t-weight and an extra (q, y, p) monomial.
pub fn expand_binomial_inverse_weight(
    ctx: &Arc<SeriesContext>,
    k: (i32, i32),
    extra: Exponent,
    coeff: FieldElement,
) -> Result<Series> {
    let exp = Exponent {
        t1: extra.t1 + k.0,
        t2: extra.t2 + k.1,
        ..extra
    };
    expand_binomial_inverse(ctx, &Monomial { exp, coeff })
}

/// Returns `acc + c·Σ_{j≥1} M^j / j`, i.e. adds `-c·log(1 - M)`.
pub fn log1m_accumulate(acc: &Series, m: &Monomial, c: i64) -> Result<Series> {
    let ctx = acc.context();
    if m.exp.p <= 0 {
        return Err(Error::NonPositiveP(ctx.fmt_monomial(&m.exp)));
    }
    check_atom(ctx, &m.exp)?;
    let mut out = acc.clone();
    if c == 0 {
        return Ok(out);
    }
    let mut e = m.exp;
    let mut pow = m.coeff.clone();
    let mut j = 1i64;
    while ctx.keeps(&e) {
        out.add_term(e, &pow.scale(&Rational::new(c, j)))?;
        e = e + m.exp;
        pow = pow.checked_mul(&m.coeff)?;
        j += 1;
    }
    Ok(out)
}

/// `exp(a)` for a series whose terms all carry positive p-exponents.
pub fn exp_series(a: &Series) -> Result<Series> {
    let ctx = a.context();
    if let Some((e, _)) = a.terms().iter().find(|(e, _)| e.p <= 0) {
        return Err(Error::ExpDomain(ctx.fmt_monomial(e)));
    }
    let pmax = ctx.windows.p.1.max(0) as usize;
    // slices[k] = p^k-part of a, scaled by k
    let mut slices = vec![Series::zero(ctx); pmax + 1];
    for (e, c) in a.terms() {
        slices[e.p as usize].add_term(*e, &c.scale(&Rational::from_int(e.p as i64)))?;
    }
    let mut parts = vec![Series::one(ctx)];
    for n in 1..=pmax {
        let mut acc = Series::zero(ctx);
        for k in 1..=n {
            if slices[k].is_empty() || parts[n - k].is_empty() {
                continue;
            }
            acc.add_assign(&slices[k].mul(&parts[n - k])?)?;
        }
        parts.push(acc.scale(&FieldElement::Rational(Rational::new(1, n as i64)))?);
    }
    let mut out = Series::zero(ctx);
    for part in &parts {
        out.add_assign(part)?;
    }
    Ok(out)
}

/// Keeps terms whose q-exponent is divisible by `n` and maps `q^{nm}` to `q^m`.
pub fn q_section(a: &Series, n: u32) -> Result<Series> {
    let ctx = a.context();
    if ctx.dq != 1 {
        return Err(Error::FractionalQ(ctx.dq));
    }
    if n == 0 {
        return Err(Error::InvalidContext("q-section index must be positive".into()));
    }
    let n = n as i32;
    let mut out = Series::zero(ctx);
    for (e, c) in a.terms() {
        if e.q % n == 0 {
            out.add_term(Exponent { q: e.q / n, ..*e }, c)?;
        }
    }
    Ok(out)
}
