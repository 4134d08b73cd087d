//! JSON dump format for series.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::context::{Direction, Exponent, Grading, SeriesContext, Windows};
use super::core::Series;
use crate::error::{Error, Result};
use crate::field::FieldElement;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Denominators {
    pub q: u32,
    pub y: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesHeader {
    pub denominators: Denominators,
    pub windows: Windows,
    pub direction: Direction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Grading>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub e_p: i32,
    pub e_q_num: i32,
    pub e_y_num: i32,
    pub e_t1: i32,
    pub e_t2: i32,
    pub coeff: FieldElement,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesDump {
    pub schema_version: u32,
    pub header: SeriesHeader,
    pub records: Vec<SeriesRecord>,
}

impl SeriesDump {
    pub fn from_series(s: &Series) -> Self {
        let ctx = s.context();
        SeriesDump {
            schema_version: SCHEMA_VERSION,
            header: SeriesHeader {
                denominators: Denominators { q: ctx.dq, y: ctx.dy },
                windows: ctx.windows,
                direction: ctx.direction,
                grading: ctx.grading,
            },
            records: s
                .terms()
                .iter()
                .map(|(e, c)| SeriesRecord {
                    e_p: e.p,
                    e_q_num: e.q,
                    e_y_num: e.y,
                    e_t1: e.t1,
                    e_t2: e.t2,
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn into_series(self) -> Result<Series> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema version {}",
                self.schema_version
            )));
        }
        let h = self.header;
        let ctx = SeriesContext {
            dq: h.denominators.q,
            dy: h.denominators.y,
            windows: h.windows,
            direction: h.direction,
            grading: h.grading,
        };
        ctx.validate()?;
        let ctx = Arc::new(ctx);
        let mut s = Series::zero(&ctx);
        for r in self.records {
            let e = Exponent {
                p: r.e_p,
                q: r.e_q_num,
                t1: r.e_t1,
                t2: r.e_t2,
                y: r.e_y_num,
            };
            if !ctx.keeps(&e) {
                return Err(Error::Parse(format!(
                    "record {} lies outside the declared windows",
                    ctx.fmt_monomial(&e)
                )));
            }
            s.add_term(e, &r.coeff)?;
        }
        Ok(s)
    }
}

impl Series {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&SeriesDump::from_series(self))?)
    }

    pub fn from_json(s: &str) -> Result<Series> {
        serde_json::from_str::<SeriesDump>(s)?.into_series()
    }
}
