use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::cone::Cone;
use super::polynomial::Polynomial;
use super::subdivision::{PiecewisePolynomial, SubCone, Subdivision};

pub const FAN_SCHEMA_VERSION: u32 = 1;

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeEntry {
    pub rays: Vec<Vec<i64>>,
    #[serde(default = "one")]
    pub multiplicity: u32,
    /// Polynomial on this cone in ambient coordinates `x1..xn`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
}

/// On-disk fan: a base cone and, optionally, the maximal cones refining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    pub schema_version: u32,
    pub base: Vec<Vec<i64>>,
    #[serde(default)]
    pub cones: Vec<ConeEntry>,
}

impl FanFile {
    pub fn from_json(s: &str) -> Result<FanFile> {
        let f: FanFile = serde_json::from_str(s).map_err(|e| Error::Parse(format!("fan file: {e}")))?;
        if f.schema_version != FAN_SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "fan file: unsupported schema version {}",
                f.schema_version
            )));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn base_cone(&self) -> Result<Cone> {
        Cone::new(self.base.clone())
    }

    pub fn subdivision(&self) -> Result<Subdivision> {
        let cones = self
            .cones
            .iter()
            .map(|c| {
                Ok(SubCone {
                    cone: Cone::new(c.rays.clone())?,
                    multiplicity: c.multiplicity,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subdivision {
            base: self.base_cone()?,
            cones,
        })
    }

    /// Per-cone polynomials, using `default` where a cone carries none.
    pub fn piecewise(&self, default: &Polynomial) -> Result<PiecewisePolynomial> {
        let n = self.base.len();
        let polys = self
            .cones
            .iter()
            .map(|c| match &c.poly {
                Some(s) => Polynomial::parse(s, n),
                None => Ok(default.clone()),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PiecewisePolynomial { polys })
    }

    pub fn from_subdivision(sub: &Subdivision) -> FanFile {
        FanFile {
            schema_version: FAN_SCHEMA_VERSION,
            base: sub.base.generators().to_vec(),
            cones: sub
                .cones
                .iter()
                .map(|c| ConeEntry {
                    rays: c.cone.generators().to_vec(),
                    multiplicity: c.multiplicity,
                    poly: None,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::subdivision::star_subdivide;

    #[test]
    fn round_trip() {
        let sub = star_subdivide(&Cone::orthant(3), &[1, 1, 1]).unwrap();
        let file = FanFile::from_subdivision(&sub);
        let back = FanFile::from_json(&file.to_json().unwrap()).unwrap();
        assert_eq!(back.subdivision().unwrap(), sub);
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = FanFile::from_json("{\"schema_version\": 1,\n \"base\": [[1,0],[0,1]],\n \"cones\": [ {\"rays\": 3} ]}")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 3"), "{err}");
    }
}
