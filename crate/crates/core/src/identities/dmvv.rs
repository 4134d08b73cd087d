//! The product formula for the generating series of Hilbert scheme genera.
//!
//! Both sides live in one graded context with slopes `(s, σ)` for `(q, p)`.
//! With `s_1` the slope needed by the genus of C², choosing `σ > s_1·Qmax`
//! makes every logarithm atom `p^n q^m y^ℓ t^k` (`m ≤ Qmax`) have grade at
//! least `n`, and an atom of grade at most the cap only ever needs table
//! entries of C²-grade at most the same cap.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::localization::{ell_c2, ell_hilb};
use crate::series::{exp_series, log1m_accumulate, q_section, Direction, Exponent, Monomial, Series, SeriesContext};

use super::plan::{graded_context, hilb_specs, required_q_slope, VerificationWindow};
use super::report::{compare_series, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DmvvPlan {
    pub p_max: i32,
    pub q_max: i32,
    pub t_span: i32,
    pub direction: Direction,
    pub c2_slope: i64,
    pub q_slope: i64,
    pub p_slope: i64,
    pub cap: i64,
}

impl DmvvPlan {
    pub fn new(p_max: u32, q_max: u32, t_span: u32, direction: Direction) -> Result<DmvvPlan> {
        if p_max == 0 {
            return Err(Error::InvalidContext("p_max must be at least 1".into()));
        }
        let c2_slope = required_q_slope(&hilb_specs(1), 1, direction);
        let q_slope = (1..=p_max)
            .map(|n| required_q_slope(&hilb_specs(n), 1, direction))
            .max()
            .unwrap_or(1)
            .max(c2_slope);
        let p_slope = c2_slope * q_max as i64 + 1;
        let cap = p_slope * p_max as i64 + q_slope * q_max as i64 + (direction.d1 + direction.d2) * t_span as i64;
        Ok(DmvvPlan {
            p_max: p_max as i32,
            q_max: q_max as i32,
            t_span: t_span as i32,
            direction,
            c2_slope,
            q_slope,
            p_slope,
            cap,
        })
    }

    pub fn window(&self) -> VerificationWindow {
        VerificationWindow {
            q_max: (self.q_max as i64).into(),
            p_max: self.p_max,
            t_span: self.t_span,
        }
    }

    /// Context shared by both sides.
    pub fn context(&self) -> Result<Arc<SeriesContext>> {
        graded_context(1, self.direction, self.q_slope, self.p_slope, self.cap, self.q_max, self.p_max)
    }

    /// Context for `ell_hilb(n)` before it is multiplied by `p^n`.
    pub fn hilb_context(&self, n: i32) -> Result<Arc<SeriesContext>> {
        graded_context(1, self.direction, self.q_slope, 1, self.cap - self.p_slope * n as i64, self.q_max, 0)
    }

    /// Context of the C² coefficient table, wide enough in q for `c(nm, ·, ·)`.
    pub fn table_context(&self) -> Result<Arc<SeriesContext>> {
        graded_context(1, self.direction, self.c2_slope, 1, self.cap, self.p_max * self.q_max, 0)
    }
}

/// `1 + Σ_{n ≤ Pmax} p^n Ell(Hilb^n)`.
pub fn dmvv_lhs(plan: &DmvvPlan) -> Result<Series> {
    let ctx = plan.context()?;
    let parts = (1..=plan.p_max)
        .into_par_iter()
        .map(|n| {
            let h = ell_hilb(n as u32, &plan.hilb_context(n)?)?;
            Series::from_terms(&ctx, h.terms().iter().map(|(e, c)| (Exponent { p: n, ..*e }, c.clone())))
        })
        .collect::<Result<Vec<_>>>()?;
    parts.iter().try_fold(Series::one(&ctx), |acc, s| acc.add(s))
}

/// Which table entry to corrupt, for exercising the comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub q: i32,
    pub y: i32,
    pub t: (i32, i32),
    pub delta: i64,
}

impl Default for Fault {
    /// Bumps `c(0, 1, (1, 0))`.
    fn default() -> Self {
        Fault {
            q: 0,
            y: 2,
            t: (1, 0),
            delta: 1,
        }
    }
}

/// The product side, from a table of the C² genus.
pub fn dmvv_rhs_from_table(plan: &DmvvPlan, table: &Series, fault: Option<Fault>) -> Result<Series> {
    let tctx = table.context();
    let need_q = plan.p_max * plan.q_max;
    let covers = tctx.dq == 1
        && tctx.windows.q.1 >= need_q
        && tctx.grading.is_some_and(|g| g.cap >= plan.cap && g.q_slope <= plan.c2_slope);
    if !covers {
        return Err(Error::TableWindow(format!(
            "need integer q up to {need_q} and grade cap {} at q-slope {}, table has q up to {} and grading {:?}",
            plan.cap, plan.c2_slope, tctx.windows.q.1, tctx.grading
        )));
    }
    let mut table = table.clone();
    if let Some(f) = fault {
        table.add_term(
            Exponent {
                q: f.q,
                y: f.y,
                t1: f.t.0,
                t2: f.t.1,
                p: 0,
            },
            &FieldElement::from_int(f.delta),
        )?;
    }
    let ctx = plan.context()?;
    let logs = (1..=plan.p_max)
        .into_par_iter()
        .map(|n| {
            let section = q_section(&table, n as u32)?;
            let mut acc = Series::zero(&ctx);
            for (e, c) in section.terms() {
                let mult = c
                    .as_rational()
                    .and_then(|r| r.as_small())
                    .filter(|&(_, d)| d == 1)
                    .map(|(n, _)| n)
                    .ok_or_else(|| Error::Invariant(format!("non-integral coefficient {c}")))?;
                if e.q > plan.q_max {
                    continue;
                }
                let atom = Exponent { p: n, ..*e };
                if ctx.grade(&atom) > plan.cap {
                    continue;
                }
                acc = log1m_accumulate(&acc, &Monomial::new(atom, FieldElement::one()), mult)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let total = logs.iter().try_fold(Series::zero(&ctx), |acc, s| acc.add(s))?;
    exp_series(&total)
}

pub fn dmvv_rhs(plan: &DmvvPlan, fault: Option<Fault>) -> Result<Series> {
    let table = ell_c2(&plan.table_context()?)?;
    dmvv_rhs_from_table(plan, &table, fault)
}

pub fn verify_dmvv(plan: &DmvvPlan, fault: Option<Fault>) -> Result<VerificationReport> {
    let (lhs, rhs) = rayon::join(|| dmvv_lhs(plan), || dmvv_rhs(plan, fault));
    let mut report = compare_series("dmvv", &lhs?, &rhs?, &plan.window())?;
    report.details = serde_json::json!({
        "p_max": plan.p_max,
        "q_max": plan.q_max,
        "c2_q_slope": plan.c2_slope,
        "fault_injected": fault.is_some(),
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order() {
        let plan = DmvvPlan::new(1, 1, 1, Direction::default()).unwrap();
        let rep = verify_dmvv(&plan, None).unwrap();
        assert!(rep.success(), "{:?}", rep.mismatches);
        assert!(rep.compared > 0);
        assert!(!verify_dmvv(&plan, Some(Fault::default())).unwrap().success());
    }

    #[test]
    fn second_order_small_window() {
        let plan = DmvvPlan::new(2, 1, 1, Direction::default()).unwrap();
        let rep = verify_dmvv(&plan, None).unwrap();
        assert!(rep.success(), "{:?}", rep.mismatches);
    }

    #[test]
    fn narrow_table_rejected() {
        let plan = DmvvPlan::new(2, 1, 1, Direction::default()).unwrap();
        let small = graded_context(1, plan.direction, plan.c2_slope, 1, plan.cap, 0, 0).unwrap();
        let table = ell_c2(&small).unwrap();
        assert!(matches!(dmvv_rhs_from_table(&plan, &table, None), Err(Error::TableWindow(_))));
    }
}
