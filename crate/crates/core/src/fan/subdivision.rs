use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Rational;

use super::cone::{is_primitive, Cone};
use super::polynomial::Polynomial;

/// Maximal cone of a subdivision together with its multiplicity `d_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubCone {
    pub cone: Cone,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subdivision {
    pub base: Cone,
    pub cones: Vec<SubCone>,
}

/// Replaces, for every generator whose coordinate in `ray` is positive, that
/// generator by `ray`.
pub fn star_subdivide(base: &Cone, ray: &[i64]) -> Result<Subdivision> {
    if ray.len() != base.dim() {
        return Err(Error::Geometry(format!(
            "ray {ray:?} has the wrong dimension for a {}-dimensional cone",
            base.dim()
        )));
    }
    if !is_primitive(ray) {
        return Err(Error::Geometry(format!("ray {ray:?} is not primitive")));
    }
    let coords = base.coordinates_int(ray);
    if coords.iter().any(Rational::is_negative) {
        return Err(Error::Geometry(format!("ray {ray:?} lies outside the cone")));
    }
    if base.generators().iter().any(|g| g.as_slice() == ray) {
        return Err(Error::Geometry(format!("ray {ray:?} is already a generator")));
    }
    let mut cones = Vec::new();
    for (i, c) in coords.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mut gens = base.generators().to_vec();
        gens[i] = ray.to_vec();
        cones.push(SubCone {
            cone: Cone::new(gens)?,
            multiplicity: 1,
        });
    }
    Ok(Subdivision {
        base: base.clone(),
        cones,
    })
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1..=997), rng.gen_range(1..=97))
}

impl Subdivision {
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Checks that the cones lie in the base and cover it without overlaps,
    /// using `samples` generic random rational points inside the base.
    pub fn validate(&self, samples: usize, seed: u64) -> Result<()> {
        for sc in &self.cones {
            if sc.cone.dim() != self.dim() {
                return Err(Error::Geometry("cone dimension differs from the base".into()));
            }
            for g in sc.cone.generators() {
                if !is_primitive(g) {
                    return Err(Error::Invariant(format!("ray {g:?} is not primitive")));
                }
                if !self.base.contains(&g.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>()) {
                    return Err(Error::Invariant(format!("ray {g:?} leaves the base cone")));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.dim();
        let mut checked = 0;
        let mut attempts = 0;
        while checked < samples {
            attempts += 1;
            if attempts > 100 * samples.max(1) {
                return Err(Error::Invariant("could not find generic sample points".into()));
            }
            let lambda: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
            let point: Vec<Rational> = (0..n)
                .map(|i| {
                    self.base
                        .generators()
                        .iter()
                        .zip(&lambda)
                        .fold(Rational::ZERO, |acc, (g, l)| &acc + &(l * &Rational::from_int(g[i])))
                })
                .collect();
            let coords: Vec<Vec<Rational>> = self.cones.iter().map(|c| c.cone.coordinates(&point)).collect();
            if coords.iter().flatten().any(Rational::is_zero) {
                continue;
            }
            let hits: Vec<usize> = coords
                .iter()
                .positions(|c| c.iter().all(|v| !v.is_negative()))
                .collect();
            match hits.len() {
                1 => {}
                0 => return Err(Error::Invariant(format!("point {} is not covered", fmt_point(&point)))),
                _ => {
                    return Err(Error::Invariant(format!(
                        "cones {hits:?} overlap at {}",
                        fmt_point(&point)
                    )))
                }
            }
            checked += 1;
        }
        Ok(())
    }

    /// The piecewise linear function equal to 1 on `ray`, 0 on every other
    /// ray, and 0 on cones not containing `ray`.
    pub fn ray_function(&self, ray: &[i64]) -> PiecewisePolynomial {
        let polys = self
            .cones
            .iter()
            .map(|sc| match sc.cone.generators().iter().position(|g| g.as_slice() == ray) {
                Some(j) => Polynomial::linear(&sc.cone.dual_forms()[j]),
                None => Polynomial::zero(self.dim()),
            })
            .collect();
        PiecewisePolynomial { polys }
    }

    /// Rays of the subdivision that are not rays of the base.
    pub fn new_rays(&self) -> Vec<Vec<i64>> {
        self.cones
            .iter()
            .flat_map(|c| c.cone.generators().iter().cloned())
            .filter(|g| !self.base.generators().contains(g))
            .unique()
            .collect()
    }
}

fn fmt_point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(Rational::to_string).join(","))
}

/// One polynomial per maximal cone, in the ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    pub polys: Vec<Polynomial>,
}

impl PiecewisePolynomial {
    pub fn constant(sub: &Subdivision, c: Rational) -> Self {
        PiecewisePolynomial {
            polys: vec![Polynomial::constant(sub.dim(), c); sub.cones.len()],
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        PiecewisePolynomial {
            polys: self.polys.iter().zip(&other.polys).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        PiecewisePolynomial {
            polys: self.polys.iter().zip(&other.polys).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PiecewisePolynomial {
            polys: self.polys.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        PiecewisePolynomial {
            polys: self.polys.iter().map(|p| p.pow(k)).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.polys.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    /// Exact agreement on every common face, tested on the lattice points
    /// `Σ c_j r_j` (`0 ≤ c_j ≤ degree`) of the shared rays.
    pub fn check_faces(&self, sub: &Subdivision) -> Result<()> {
        if self.polys.len() != sub.cones.len() {
            return Err(Error::Invariant(format!(
                "{} polynomials for {} cones",
                self.polys.len(),
                sub.cones.len()
            )));
        }
        let deg = self.degree() as i64;
        for (a, b) in (0..sub.cones.len()).tuple_combinations() {
            let rays = sub.cones[a].cone.common_rays(&sub.cones[b].cone);
            if rays.is_empty() {
                continue;
            }
            for c in (0..rays.len()).map(|_| 0..=deg).multi_cartesian_product() {
                let point: Vec<Rational> = (0..sub.dim())
                    .map(|i| Rational::from_int(rays.iter().zip(&c).map(|(r, &k)| r[i] * k).sum()))
                    .collect();
                if self.polys[a].eval(&point) != self.polys[b].eval(&point) {
                    return Err(Error::Invariant(format!(
                        "cones {a} and {b} disagree at {}",
                        fmt_point(&point)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `ν*(g)`: the same polynomial on every cone of the subdivision.
pub fn pullback(g: &Polynomial, sub: &Subdivision) -> PiecewisePolynomial {
    PiecewisePolynomial {
        polys: vec![g.clone(); sub.cones.len()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_blow_up() {
        let sub = star_subdivide(&Cone::orthant(2), &[1, 1]).unwrap();
        let gens: Vec<_> = sub.cones.iter().map(|c| c.cone.generators().to_vec()).collect();
        assert_eq!(gens, vec![vec![vec![1, 0], vec![1, 1]], vec![vec![1, 1], vec![0, 1]]]);
        sub.validate(200, 1).unwrap();
        assert_eq!(sub.new_rays(), vec![vec![1, 1]]);
        sub.ray_function(&[1, 1]).check_faces(&sub).unwrap();
    }

    #[test]
    fn spatial_blow_ups() {
        let sub = star_subdivide(&Cone::orthant(3), &[1, 1, 1]).unwrap();
        assert_eq!(sub.cones.len(), 3);
        sub.validate(200, 2).unwrap();
        let edge = star_subdivide(&Cone::orthant(3), &[1, 1, 0]).unwrap();
        assert_eq!(edge.cones.len(), 2);
        edge.validate(200, 3).unwrap();
        assert!(star_subdivide(&Cone::orthant(3), &[1, -1, 0]).is_err());
        assert!(star_subdivide(&Cone::orthant(2), &[2, 2]).is_err());
    }

    #[test]
    fn overlap_and_gap_detected() {
        let mut sub = star_subdivide(&Cone::orthant(2), &[1, 1]).unwrap();
        let extra = sub.cones[0].clone();
        sub.cones.push(extra);
        assert!(matches!(sub.validate(50, 4), Err(Error::Invariant(_))));
        sub.cones.truncate(1);
        assert!(matches!(sub.validate(50, 4), Err(Error::Invariant(_))));
    }

    #[test]
    fn face_mismatch_detected() {
        let sub = star_subdivide(&Cone::orthant(2), &[1, 1]).unwrap();
        let mut f = PiecewisePolynomial::constant(&sub, Rational::ONE);
        f.polys[0] = Polynomial::var(2, 0);
        assert!(f.check_faces(&sub).is_err());
    }
}
