use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::context::{Exponent, SeriesContext};
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Products with fewer term pairs than this stay on the calling thread.
const PAR_THRESHOLD: usize = 1 << 14;

/// Truncated Laurent series; terms outside the context are dropped on creation.
#[derive(Clone, Debug)]
pub struct Series {
    ctx: Arc<SeriesContext>,
    terms: BTreeMap<Exponent, FieldElement>,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.terms == other.terms
    }
}

impl Series {
    pub fn zero(ctx: &Arc<SeriesContext>) -> Self {
        Series {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<SeriesContext>) -> Self {
        Self::monomial(ctx, Exponent::ZERO, FieldElement::one())
    }

    pub fn constant(ctx: &Arc<SeriesContext>, c: FieldElement) -> Self {
        Self::monomial(ctx, Exponent::ZERO, c)
    }

    pub fn monomial(ctx: &Arc<SeriesContext>, e: Exponent, c: FieldElement) -> Self {
        let mut s = Self::zero(ctx);
        if !c.is_zero() && ctx.keeps(&e) {
            s.terms.insert(e, c);
        }
        s
    }

    /// Sums repeated exponents and drops out-of-context terms.
    pub fn from_terms<I>(ctx: &Arc<SeriesContext>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, FieldElement)>,
    {
        let mut s = Self::zero(ctx);
        for (e, c) in terms {
            s.add_term(e, &c)?;
        }
        Ok(s)
    }

    pub(crate) fn from_map_unchecked(ctx: &Arc<SeriesContext>, terms: BTreeMap<Exponent, FieldElement>) -> Self {
        Series {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn context(&self) -> &Arc<SeriesContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, FieldElement> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, FieldElement> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn same_context(&self, other: &Series) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx
    }

    fn check_ctx(&self, other: &Series) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Adds `c·x^e` in place, respecting truncation.
    pub fn add_term(&mut self, e: Exponent, c: &FieldElement) -> Result<()> {
        if c.is_zero() || !self.ctx.keeps(&e) {
            return Ok(());
        }
        accumulate(&mut self.terms, e, c)
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_ctx(other)?;
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (e, c) in &small.terms {
            accumulate(&mut big.terms, *e, c)?;
        }
        Ok(big)
    }

    pub fn add_assign(&mut self, other: &Series) -> Result<()> {
        self.check_ctx(other)?;
        for (e, c) in &other.terms {
            accumulate(&mut self.terms, *e, c)?;
        }
        Ok(())
    }

    pub fn neg(&self) -> Series {
        Series {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Series> {
        if c.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let mut terms = BTreeMap::new();
        for (e, a) in &self.terms {
            terms.insert(*e, a.checked_mul(c)?);
        }
        Ok(Series {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Multiplies by `c·x^e`, dropping whatever leaves the context.
    pub fn mul_monomial(&self, e: Exponent, c: &FieldElement) -> Result<Series> {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for (f, a) in &self.terms {
                let g = *f + e;
                if self.ctx.keeps(&g) {
                    terms.insert(g, a.checked_mul(c)?);
                }
            }
        }
        Ok(Series {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Cauchy product restricted to the context.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_ctx(other)?;
        let (a, b) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if a.is_empty() {
            return Ok(Self::zero(&self.ctx));
        }
        let ctx = &*self.ctx;
        let left: Vec<(Exponent, &FieldElement, i64)> =
            a.terms.iter().map(|(e, c)| (*e, c, ctx.grade(e))).collect();
        let mut right: Vec<(Exponent, &FieldElement, i64)> =
            b.terms.iter().map(|(e, c)| (*e, c, ctx.grade(e))).collect();
        right.sort_by_key(|r| r.2);
        let cap = ctx.grading.map(|g| g.cap);

        let block = |chunk: &[(Exponent, &FieldElement, i64)]| -> Result<FxHashMap<Exponent, FieldElement>> {
            let mut acc: FxHashMap<Exponent, FieldElement> = FxHashMap::default();
            for (ea, ca, ga) in chunk {
                let limit = match cap {
                    Some(c) => right.partition_point(|r| r.2 + ga <= c),
                    None => right.len(),
                };
                for (eb, cb, _) in &right[..limit] {
                    let e = *ea + *eb;
                    if !ctx.windows.contains(&e) {
                        continue;
                    }
                    let prod = ca.checked_mul(cb)?;
                    match acc.get_mut(&e) {
                        Some(v) => *v = v.checked_add(&prod)?,
                        None => {
                            acc.insert(e, prod);
                        }
                    }
                }
            }
            Ok(acc)
        };

        let work = left.len() * right.len();
        let merged = if work < PAR_THRESHOLD {
            block(&left)?
        } else {
            let chunk = (left.len() / (rayon::current_num_threads() * 4)).max(1);
            let parts: Vec<_> = left.par_chunks(chunk).map(block).collect::<Result<_>>()?;
            let mut parts = parts.into_iter();
            let mut first = parts.next().unwrap_or_default();
            for part in parts {
                for (e, c) in part {
                    match first.get_mut(&e) {
                        Some(v) => *v = v.checked_add(&c)?,
                        None => {
                            first.insert(e, c);
                        }
                    }
                }
            }
            first
        };
        let terms = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Series {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Product of many factors, smallest first.
    pub fn product<'a, I>(ctx: &Arc<SeriesContext>, factors: I) -> Result<Series>
    where
        I: IntoIterator<Item = &'a Series>,
    {
        let mut acc = Series::one(ctx);
        for f in factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, n: u32) -> Result<Series> {
        let mut acc = Series::one(&self.ctx);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Leading term under the order (p, q, δ(t), y).
    pub fn leading_term(&self) -> Option<(Exponent, &FieldElement)> {
        self.terms
            .iter()
            .min_by_key(|(e, _)| (e.p, e.q, self.ctx.delta(e), e.y))
            .map(|(e, c)| (*e, c))
    }

    /// Two-sided inverse within the context, for series whose leading term
    /// has zero p- and q-exponent.
    pub fn invert_unit(&self) -> Result<Series> {
        let (lead, lc) = self
            .leading_term()
            .ok_or_else(|| Error::NotUnit("0".into()))?;
        if lead.p != 0 || lead.q != 0 {
            return Err(Error::NotUnit(self.ctx.fmt_monomial(&lead)));
        }
        let lc_inv = lc.checked_inv()?;
        // self = lc·x^lead·(1 - u); u lives in a context shifted by lead so
        // that lead^-1·u^j lands exactly on the original windows
        let shifted = Arc::new(shift_context(&self.ctx, lead));
        let mut u = Series::zero(&shifted);
        for (e, c) in &self.terms {
            if *e == lead {
                continue;
            }
            let rel = *e - lead;
            if self.ctx.grading.is_some() && self.ctx.grade(&rel) < 1 && !is_pure_y(&rel) {
                return Err(Error::GradingTooWeak {
                    monomial: self.ctx.fmt_monomial(&rel),
                    grade: self.ctx.grade(&rel),
                });
            }
            u.add_term(rel, &c.checked_mul(&lc_inv)?.neg_ref())?;
        }
        let geo = geometric_sum(&u)?;
        let mut out = Series::zero(&self.ctx);
        for (e, c) in geo.terms {
            out.add_term(e - lead, &c.checked_mul(&lc_inv)?)?;
        }
        Ok(out)
    }

    /// Sets every y to 1.
    pub fn specialize_y_one(&self) -> Result<Series> {
        let mut out = Series::zero(&self.ctx);
        for (e, c) in &self.terms {
            out.add_term(Exponent { y: 0, ..*e }, c)?;
        }
        Ok(out)
    }

    /// Restricts to the terms satisfying `keep`.
    pub fn filter<F: Fn(&Exponent) -> bool>(&self, keep: F) -> Series {
        Series {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Re-expresses the series in another context whose denominators are
    /// multiples of the current ones.
    pub fn rebase(&self, target: &Arc<SeriesContext>) -> Result<Series> {
        let (sq, sy) = (target.dq / self.ctx.dq, target.dy / self.ctx.dy);
        if sq * self.ctx.dq != target.dq || sy * self.ctx.dy != target.dy {
            return Err(Error::InvalidContext(format!(
                "cannot rebase denominators ({},{}) to ({},{})",
                self.ctx.dq, self.ctx.dy, target.dq, target.dy
            )));
        }
        let mut out = Series::zero(target);
        for (e, c) in &self.terms {
            let f = Exponent {
                q: e.q * sq as i32,
                y: e.y * sy as i32,
                ..*e
            };
            out.add_term(f, c)?;
        }
        Ok(out)
    }
}

fn shift_context(ctx: &SeriesContext, lead: Exponent) -> SeriesContext {
    let mut w = ctx.windows;
    let sh = |(lo, hi): (i32, i32), d: i32| (lo + d, hi + d);
    w.p = sh(w.p, lead.p);
    w.q = sh(w.q, lead.q);
    w.y = sh(w.y, lead.y);
    w.t1 = sh(w.t1, lead.t1);
    w.t2 = sh(w.t2, lead.t2);
    let mut out = ctx.with_windows(w);
    if let Some(g) = out.grading.as_mut() {
        g.cap += ctx.grade(&lead);
    }
    out
}

pub(crate) fn is_pure_y(e: &Exponent) -> bool {
    e.p == 0 && e.q == 0 && e.t1 == 0 && e.t2 == 0
}

/// Σ_{j≥0} u^j, stopping when the powers vanish under truncation.
pub(crate) fn geometric_sum(u: &Series) -> Result<Series> {
    const MAX_STEPS: usize = 100_000;
    let mut acc = Series::one(u.context());
    let mut power = Series::one(u.context());
    for _ in 0..MAX_STEPS {
        power = power.mul(u)?;
        if power.is_empty() {
            return Ok(acc);
        }
        acc.add_assign(&power)?;
    }
    Err(Error::InvalidContext(
        "geometric series does not terminate inside the windows".into(),
    ))
}

fn accumulate(map: &mut BTreeMap<Exponent, FieldElement>, e: Exponent, c: &FieldElement) -> Result<()> {
    use std::collections::btree_map::Entry;
    match map.entry(e) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c.clone());
            }
        }
        Entry::Occupied(mut o) => {
            let s = o.get().checked_add(c)?;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
    Ok(())
}
