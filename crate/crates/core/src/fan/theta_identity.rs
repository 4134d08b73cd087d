//! Numeric check of the theta-function summation identity over a star
//! subdivision: the sum over the new cones of products of divisor factors in
//! the cone coordinates equals the product over the base coordinates.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::theta::divisor_factor_numeric;

use super::cone::Cone;
use super::subdivision::Subdivision;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaIdentityConfig {
    pub tau: Complex64,
    pub z: Complex64,
    pub l_max: u32,
    pub samples: usize,
    pub seed: u64,
    pub max_retries: usize,
}

impl Default for ThetaIdentityConfig {
    fn default() -> Self {
        ThetaIdentityConfig {
            tau: Complex64::new(0.0, 0.9),
            z: Complex64::new(0.17, 0.05),
            l_max: 40,
            samples: 20,
            seed: 0,
            max_retries: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaIdentityReport {
    pub max_residual: f64,
    pub samples: usize,
    pub resamples: usize,
    /// Coefficient of `z` carried by the exceptional ray.
    pub exceptional_coefficient: Rational,
}

/// Values far above this are treated as sitting on a pole.
const MAGNITUDE_GUARD: f64 = 1e6;

/// Compares both sides at random points.
///
/// `shifts[j] = (g_j, h_j)` translates the j-th base coordinate by
/// `g_j - h_j τ`; `coeffs[j] = a_j` gives that ray the factor with `z`
/// coefficient `1 - a_j`. The new ray gets `Σ n_j (1 - a_j)` where
/// `v = Σ n_j e_j`.
pub fn theta_identity_check(
    base: &Cone,
    sub: &Subdivision,
    shifts: &[(Rational, Rational)],
    coeffs: &[Rational],
    cfg: &ThetaIdentityConfig,
) -> Result<ThetaIdentityReport> {
    let n = base.dim();
    if !base.is_smooth() {
        return Err(Error::Geometry("base cone must be smooth".into()));
    }
    if shifts.len() != n || coeffs.len() != n {
        return Err(Error::Geometry(format!("need {n} shifts and {n} coefficients")));
    }
    if cfg.tau.im <= 0.0 {
        return Err(Error::TauNotInUpperHalfPlane(cfg.tau.im));
    }
    if cfg.z.norm() == 0.0 {
        return Err(Error::PoleAtSample("theta(-cz) vanishes identically at z = 0".into()));
    }
    let new_rays = sub.new_rays();
    let [ray] = new_rays.as_slice() else {
        return Err(Error::Geometry(format!(
            "expected a star subdivision with one new ray, found {}",
            new_rays.len()
        )));
    };
    let c_base: Vec<Rational> = coeffs.iter().map(|a| &Rational::ONE - a).collect();
    let c_new = base
        .coordinates_int(ray)
        .iter()
        .zip(&c_base)
        .fold(Rational::ZERO, |acc, (m, c)| &acc + &(m * c));
    let ray_coeff = |g: &Vec<i64>| -> f64 {
        match base.generators().iter().position(|b| b == g) {
            Some(j) => c_base[j].to_f64(),
            None => c_new.to_f64(),
        }
    };
    // forms of each cone in base coordinates, with their z coefficients
    let cones: Vec<(Vec<Vec<f64>>, Vec<f64>)> = sub
        .cones
        .iter()
        .map(|sc| {
            let m = sc
                .cone
                .forms_in(base)
                .iter()
                .map(|row| row.iter().map(Rational::to_f64).collect())
                .collect();
            let c = sc.cone.generators().iter().map(ray_coeff).collect();
            (m, c)
        })
        .collect();
    let gamma: Vec<Complex64> = shifts
        .iter()
        .map(|(g, h)| Complex64::new(g.to_f64(), 0.0) - cfg.tau * h.to_f64())
        .collect();

    let factor = |v: Complex64, c: f64| divisor_factor_numeric(v, c, cfg.z, cfg.tau, cfg.l_max);
    let evaluate = |x: &[Complex64]| -> Result<(Complex64, Complex64)> {
        let p: Vec<Complex64> = x.iter().zip(&gamma).map(|(a, b)| a + b).collect();
        let mut rhs = Complex64::new(1.0, 0.0);
        for (v, c) in p.iter().zip(&c_base) {
            rhs *= factor(*v, c.to_f64())?;
        }
        let mut lhs = Complex64::new(0.0, 0.0);
        for ((m, cs), sc) in cones.iter().zip(&sub.cones) {
            let mut term = Complex64::new(sc.multiplicity as f64, 0.0);
            for (row, &c) in m.iter().zip(cs) {
                let v: Complex64 = row.iter().zip(&p).map(|(a, b)| b * a).sum();
                term *= factor(v, c)?;
            }
            lhs += term;
        }
        Ok((lhs, rhs))
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = ThetaIdentityReport {
        max_residual: 0.0,
        samples: 0,
        resamples: 0,
        exceptional_coefficient: c_new.clone(),
    };
    while report.samples < cfg.samples {
        if report.resamples > cfg.max_retries {
            return Err(Error::PoleAtSample(format!(
                "gave up after {} resamples",
                report.resamples
            )));
        }
        let x: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.15..0.15)))
            .collect();
        match evaluate(&x) {
            Ok((l, r)) if l.norm() < MAGNITUDE_GUARD && r.norm() < MAGNITUDE_GUARD => {
                report.max_residual = report.max_residual.max((l - r).norm());
                report.samples += 1;
            }
            Ok(_) | Err(Error::PoleAtSample(_)) => report.resamples += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::subdivision::star_subdivide;

    fn zeros(n: usize) -> (Vec<(Rational, Rational)>, Vec<Rational>) {
        (vec![(Rational::ZERO, Rational::ZERO); n], vec![Rational::ZERO; n])
    }

    #[test]
    fn planar_blow_up_identity() {
        let k = Cone::orthant(2);
        let sub = star_subdivide(&k, &[1, 1]).unwrap();
        let (s, a) = zeros(2);
        let rep = theta_identity_check(&k, &sub, &s, &a, &ThetaIdentityConfig::default()).unwrap();
        assert_eq!(rep.exceptional_coefficient, Rational::from_int(2));
        assert!(rep.max_residual < 1e-9, "{rep:?}");
    }

    #[test]
    fn twisted_and_weighted() {
        let k = Cone::orthant(3);
        let sub = star_subdivide(&k, &[1, 1, 1]).unwrap();
        let s = vec![
            (Rational::new(1, 3), Rational::new(1, 2)),
            (Rational::new(2, 3), Rational::ZERO),
            (Rational::ZERO, Rational::new(1, 4)),
        ];
        let a = vec![Rational::new(1, 5), Rational::new(-1, 2), Rational::ZERO];
        let rep = theta_identity_check(&k, &sub, &s, &a, &ThetaIdentityConfig::default()).unwrap();
        assert!(rep.max_residual < 1e-9, "{rep:?}");
    }

    #[test]
    fn face_blow_up_and_fault_injection() {
        let k = Cone::orthant(3);
        let sub = star_subdivide(&k, &[1, 1, 0]).unwrap();
        let (s, a) = zeros(3);
        let rep = theta_identity_check(&k, &sub, &s, &a, &ThetaIdentityConfig::default()).unwrap();
        assert!(rep.max_residual < 1e-9);
        let mut broken = sub.clone();
        broken.cones[0].multiplicity = 2;
        let rep = theta_identity_check(&k, &broken, &s, &a, &ThetaIdentityConfig::default()).unwrap();
        assert!(rep.max_residual > 1e-3);
    }

    #[test]
    fn zero_z_is_a_pole() {
        let k = Cone::orthant(2);
        let sub = star_subdivide(&k, &[1, 1]).unwrap();
        let (s, a) = zeros(2);
        let cfg = ThetaIdentityConfig {
            z: Complex64::new(0.0, 0.0),
            ..Default::default()
        };
        assert!(matches!(theta_identity_check(&k, &sub, &s, &a, &cfg), Err(Error::PoleAtSample(_))));
    }
}
