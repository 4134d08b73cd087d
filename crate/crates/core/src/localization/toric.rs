//! Fixed-point data of the minimal resolution of C²/Z_k, with Z_k acting by
//! `(ζ, ζ⁻¹)`.
//!
//! The fan has rays `ρ_i = (i, 1 - i)`, `0 ≤ i ≤ k`, and maximal cones
//! `⟨ρ_i, ρ_{i+1}⟩`. Characters of its torus are matched with characters
//! `(a, b) ↔ x^a y^b` of the torus of C² through the invariant monomials
//! `x^k, xy, y^k`, which pair with the boundary rays `(ρ_0, ρ_k)` as
//! `(k, 0), (1, 1), (0, k)`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Cone;
use crate::field::{FieldElement, Rational};
use crate::series::{Series, SeriesContext};
use crate::theta::ThetaRatioSpec;

use super::genera::{check_weight, theta_table, Normalization};

/// Which torus the A_{k-1} genera are computed for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AkTorus {
    /// The full two-dimensional torus of C² (commutes with Z_k).
    #[default]
    Full,
    /// The diagonal circle `t1 = t2 = t`, carried in the `t1` slot.
    Diagonal,
}

impl AkTorus {
    fn restrict(self, w: (i32, i32)) -> (i32, i32) {
        match self {
            AkTorus::Full => w,
            AkTorus::Diagonal => (w.0 + w.1, 0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricFixedPoint {
    pub rays: [Vec<i64>; 2],
    /// Tangent weights in `(u1, u2)`, dual to `rays` in order.
    pub weights: [(i32, i32); 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricFixedData {
    pub k: u32,
    pub cones: Vec<ToricFixedPoint>,
}

/// Matching map from the fan's character lattice to `(u1, u2)`.
fn character_matching(k: i64) -> Result<[[Rational; 2]; 2]> {
    let base = Cone::new(vec![vec![0, 1], vec![k, 1 - k]])?;
    // images of the fan characters pairing as (k,0), (0,k) with (ρ_0, ρ_k):
    // those are k·(dual forms of the base cone)
    let duals = base.dual_forms();
    let kk = Rational::from_int(k);
    let m_x: Vec<Rational> = duals[0].iter().map(|c| c * &kk).collect();
    let m_y: Vec<Rational> = duals[1].iter().map(|c| c * &kk).collect();
    // φ(m_x) = (k, 0), φ(m_y) = (0, k); solve for φ on the standard basis
    let inv = crate::fan::invert_matrix(&[m_x, m_y])
        .ok_or_else(|| Error::Geometry("degenerate invariant monomials".into()))?;
    // rows of `inv` satisfy Σ_j inv[i][j]·m_j = e_i, so φ(e_i) = k·inv[i]
    Ok([
        [&inv[0][0] * &kk, &inv[0][1] * &kk],
        [&inv[1][0] * &kk, &inv[1][1] * &kk],
    ])
}

pub fn ak_fixed_data(k: u32) -> Result<ToricFixedData> {
    if k < 2 {
        return Err(Error::Geometry(format!("A_(k-1) needs k >= 2, got {k}")));
    }
    let ki = k as i64;
    let phi = character_matching(ki)?;
    let xy = phi[0].iter().zip(&phi[1]).map(|(a, b)| a + b).collect::<Vec<_>>();
    // xy = φ(1,1) must be (1,1)
    if xy != vec![Rational::ONE, Rational::ONE] {
        return Err(Error::Invariant("character matching does not send xy to (1,1)".into()));
    }
    let to_int = |r: &Rational| -> Result<i32> {
        match r.as_small() {
            Some((n, 1)) => Ok(n as i32),
            _ => Err(Error::Invariant(format!("non-integral weight component {r}"))),
        }
    };
    let rays: Vec<Vec<i64>> = (0..=ki).map(|i| vec![i, 1 - i]).collect();
    let cones = rays
        .windows(2)
        .map(|pair| {
            let cone = Cone::new(pair.to_vec())?;
            if !cone.is_smooth() {
                return Err(Error::Invariant(format!("cone {pair:?} is not smooth")));
            }
            let mut weights = [(0, 0); 2];
            for (w, form) in weights.iter_mut().zip(cone.dual_forms()) {
                let a = &(&form[0] * &phi[0][0]) + &(&form[1] * &phi[1][0]);
                let b = &(&form[0] * &phi[0][1]) + &(&form[1] * &phi[1][1]);
                *w = (to_int(&a)?, to_int(&b)?);
            }
            Ok(ToricFixedPoint {
                rays: [pair[0].clone(), pair[1].clone()],
                weights,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ToricFixedData { k, cones })
}

/// Genus of the minimal resolution: one product per fixed point.
pub fn ell_ak_resolution(k: u32, ctx: &Arc<SeriesContext>, torus: AkTorus) -> Result<Series> {
    let data = ak_fixed_data(k)?;
    let specs: Vec<Vec<ThetaRatioSpec>> = data
        .cones
        .iter()
        .map(|c| {
            c.weights
                .iter()
                .map(|&w| {
                    let w = torus.restrict(w);
                    check_weight(w, ctx, || format!("A_{} fixed point {:?}", k - 1, c.rays))?;
                    Ok(ThetaRatioSpec::plain(w))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let table = theta_table(specs.iter().flatten().cloned(), ctx)?;
    let terms = specs
        .par_iter()
        .map(|s| Series::product(ctx, s.iter().map(|x| &table[x])))
        .collect::<Result<Vec<_>>>()?;
    terms.into_iter().try_fold(Series::zero(ctx), |acc, s| acc.add(&s))
}

/// Orbifold genus of C²/Z_k: `(1/k) Σ_{j1,j2}` over the twisted sectors,
/// `x` twisted by `(j1/k, j2/k)` and `y` by the inverse characters.
pub fn ell_orb_cyclic(k: u32, ctx: &Arc<SeriesContext>, torus: AkTorus, norm: Normalization) -> Result<Series> {
    if k < 2 {
        return Err(Error::Geometry(format!("cyclic orbifold needs k >= 2, got {k}")));
    }
    let ki = k as i64;
    let wx = torus.restrict((1, 0));
    let wy = torus.restrict((0, 1));
    let sectors: Vec<Vec<ThetaRatioSpec>> = (0..ki)
        .flat_map(|j1| (0..ki).map(move |j2| (j1, j2)))
        .map(|(j1, j2)| {
            let a = Rational::new(j1, ki);
            let b = Rational::new(j2, ki);
            let a_inv = Rational::new((ki - j1) % ki, ki);
            let b_inv = Rational::new((ki - j2) % ki, ki);
            vec![norm.spec(wx, a, b), norm.spec(wy, a_inv, b_inv)]
        })
        .collect();
    let table = theta_table(sectors.iter().flatten().cloned(), ctx)?;
    let terms = sectors
        .par_iter()
        .map(|s| Series::product(ctx, s.iter().map(|x| &table[x])))
        .collect::<Result<Vec<_>>>()?;
    let total = terms.into_iter().try_fold(Series::zero(ctx), |acc, s| acc.add(&s))?;
    total.scale(&FieldElement::Rational(Rational::new(1, ki)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_weights() {
        let d = ak_fixed_data(2).unwrap();
        assert_eq!(d.cones.len(), 2);
        let mut w: Vec<_> = d.cones.iter().map(|c| {
            let mut v = c.weights.to_vec();
            v.sort();
            v
        }).collect();
        w.sort();
        assert_eq!(w, vec![vec![(-1, 1), (2, 0)], vec![(0, 2), (1, -1)]]);
    }

    #[test]
    fn weights_are_consistent() {
        for k in 2..=6 {
            let d = ak_fixed_data(k).unwrap();
            assert_eq!(d.cones.len(), k as usize);
            for c in &d.cones {
                // trivial canonical class
                assert_eq!((c.weights[0].0 + c.weights[1].0, c.weights[0].1 + c.weights[1].1), (1, 1));
            }
            for pair in d.cones.windows(2) {
                // the curve between adjacent fixed points: opposite weights
                let (a, b) = (pair[0].weights[0], pair[1].weights[1]);
                assert_eq!((a.0 + b.0, a.1 + b.1), (0, 0));
            }
        }
    }
}
