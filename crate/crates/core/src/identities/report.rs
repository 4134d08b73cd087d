use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{FieldElement, Rational};
use crate::series::{Direction, Exponent, Grading, Series, SeriesContext};

use super::plan::VerificationWindow;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// How many mismatches are listed; the count covers all of them.
pub const MISMATCH_LIST_LIMIT: usize = 100;

/// One coefficient `c(m, ℓ, k)` of a series (also carrying p).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub p: i32,
    /// q-exponent numerator over the table's `dq`.
    pub m: i32,
    /// y-exponent numerator over the table's `dy`.
    pub l: i32,
    pub k: (i32, i32),
    pub value: FieldElement,
}

/// Coefficients of a series in q-order-major order, with the context they
/// were generated in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub dq: u32,
    pub dy: u32,
    pub direction: Direction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading: Option<Grading>,
    pub entries: Vec<CoefficientEntry>,
}

impl CoefficientTable {
    pub fn from_series<F: Fn(&Exponent) -> bool>(s: &Series, keep: F) -> Self {
        let ctx = s.context();
        let mut entries: Vec<CoefficientEntry> = s
            .terms()
            .iter()
            .filter(|(e, _)| keep(e))
            .map(|(e, c)| CoefficientEntry {
                p: e.p,
                m: e.q,
                l: e.y,
                k: (e.t1, e.t2),
                value: c.clone(),
            })
            .collect();
        entries.sort_by_key(|c| (c.p, c.m, c.k.0 + c.k.1, c.k, c.l));
        CoefficientTable {
            dq: ctx.dq,
            dy: ctx.dy,
            direction: ctx.direction,
            grading: ctx.grading,
            entries,
        }
    }

    /// Plain-text rendering, one coefficient per line.
    pub fn render(&self) -> String {
        let frac = |n: i32, d: u32| Rational::new(n as i64, d as i64).to_string();
        let mut out = String::from("p\tq\tt1\tt2\ty\tcoefficient\n");
        for c in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                c.p,
                frac(c.m, self.dq),
                c.k.0,
                c.k.1,
                frac(c.l, self.dy),
                c.value
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// The monomial compared, or a description for non-coefficient checks.
    pub monomial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<FieldElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<FieldElement>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub identity: String,
    pub seed: u64,
    pub direction: Direction,
    pub dq: u32,
    pub dy: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading: Option<Grading>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<VerificationWindow>,
    pub compared: usize,
    pub mismatch_count: usize,
    pub mismatches: Vec<Mismatch>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

impl VerificationReport {
    pub fn success(&self) -> bool {
        self.mismatch_count == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Report shell for checks that are not coefficient comparisons.
    pub fn numeric(identity: &str, seed: u64, details: serde_json::Value, failures: Vec<String>) -> Self {
        let failures: Vec<Mismatch> = failures
            .into_iter()
            .map(|monomial| Mismatch {
                monomial,
                lhs: None,
                rhs: None,
            })
            .collect();
        VerificationReport {
            schema_version: REPORT_SCHEMA_VERSION,
            identity: identity.into(),
            seed,
            direction: Direction::default(),
            dq: 1,
            dy: 2,
            grading: None,
            window: None,
            compared: 0,
            mismatch_count: failures.len(),
            mismatches: failures,
            details,
            runtime_seconds: None,
        }
    }
}

/// Compares two series in the same context on every exponent accepted by
/// `window`.
pub fn compare_series(
    identity: &str,
    lhs: &Series,
    rhs: &Series,
    window: &VerificationWindow,
) -> Result<VerificationReport> {
    if !lhs.same_context(rhs) {
        return Err(crate::error::Error::ContextMismatch);
    }
    let ctx: &SeriesContext = lhs.context();
    let exps: BTreeSet<Exponent> = lhs
        .terms()
        .keys()
        .chain(rhs.terms().keys())
        .filter(|e| window.contains(ctx, e))
        .copied()
        .collect();
    let mut mismatches = Vec::new();
    let mut count = 0;
    for e in &exps {
        let (a, b) = (lhs.coeff(e), rhs.coeff(e));
        if a != b {
            count += 1;
            if mismatches.len() < MISMATCH_LIST_LIMIT {
                mismatches.push(Mismatch {
                    monomial: ctx.fmt_monomial(e),
                    lhs: Some(a),
                    rhs: Some(b),
                });
            }
        }
    }
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        identity: identity.into(),
        seed: 0,
        direction: ctx.direction,
        dq: ctx.dq,
        dy: ctx.dy,
        grading: ctx.grading,
        window: Some(window.clone()),
        compared: exps.len(),
        mismatch_count: count,
        mismatches,
        details: serde_json::Value::Null,
        runtime_seconds: None,
    })
}
