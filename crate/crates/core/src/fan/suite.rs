//! Randomized checks of the pushforward on star subdivisions of orthants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::Rational;

use super::cone::Cone;
use super::polynomial::Polynomial;
use super::pushforward::{pushforward, pushforward_at};
use super::subdivision::{pullback, star_subdivide, PiecewisePolynomial, Subdivision};

/// Random polynomial of degree at most `deg` with coefficients in `[-3, 3]`.
pub fn random_polynomial(nvars: usize, deg: u32, rng: &mut impl Rng) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    let mut e = vec![0u32; nvars];
    loop {
        if e.iter().sum::<u32>() <= deg {
            p.add_term(e.clone(), Rational::from_int(rng.gen_range(-3..=3)));
        }
        // odometer over exponent vectors with entries up to deg
        let mut i = 0;
        while i < nvars && e[i] == deg {
            e[i] = 0;
            i += 1;
        }
        if i == nvars {
            return p;
        }
        e[i] += 1;
    }
}

/// `Σ_k ν^*(g_k)·t^k` with `deg g_k ≤ deg - k`, `t` the function of the
/// first new ray.
pub fn random_piecewise(sub: &Subdivision, deg: u32, rng: &mut impl Rng) -> PiecewisePolynomial {
    let n = sub.dim();
    let t = sub.ray_function(&sub.new_rays()[0]);
    let mut f = PiecewisePolynomial::constant(sub, Rational::ZERO);
    for k in 0..=deg {
        let g = pullback(&random_polynomial(n, deg - k, rng), sub);
        f = f.add(&g.mul(&t.pow(k)));
    }
    f
}

/// Random rational point with small entries, none zero.
fn random_point(n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let mut v = 0;
            while v == 0 {
                v = rng.gen_range(-9..=9);
            }
            Rational::new(v, rng.gen_range(1..=5))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricSuiteConfig {
    /// Exceptional rays, one star subdivision of the orthant each.
    pub rays: Vec<Vec<i64>>,
    pub functions: usize,
    pub pairs: usize,
    pub max_degree: u32,
    pub seed: u64,
}

impl Default for ToricSuiteConfig {
    fn default() -> Self {
        ToricSuiteConfig {
            rays: vec![vec![1, 1], vec![1, 1, 1], vec![1, 1, 0]],
            functions: 50,
            pairs: 100,
            max_degree: 3,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricSuiteReport {
    pub pushforwards: usize,
    pub projection_pairs: usize,
    pub failures: Vec<String>,
}

impl ToricSuiteReport {
    pub fn success(&self) -> bool {
        self.failures.is_empty()
    }
}

enum Case {
    Push(usize),
    Projection(usize),
}

/// Pushforwards of random piecewise polynomials (polynomiality and agreement
/// with the unsimplified fraction sum), the projection formula
/// `ν_*(ν^*g·f) = g·ν_*f`, `ν_*1 = 1` and `ν_*t = 0` when the exceptional
/// ray is interior to a cone of dimension at least 3.
///
/// Cases are split evenly over the configured rays.
pub fn toric_suite(cfg: &ToricSuiteConfig) -> Result<ToricSuiteReport> {
    let subs = cfg
        .rays
        .iter()
        .map(|r| {
            let base = Cone::orthant(r.len());
            let sub = star_subdivide(&base, r)?;
            Ok((base, sub))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ToricSuiteReport::default();
    for (base, sub) in &subs {
        let n = sub.dim();
        let one = PiecewisePolynomial::constant(sub, Rational::ONE);
        if pushforward(&one, sub, base)? != Polynomial::one(n) {
            report.failures.push(format!("push(1) != 1 for {:?}", sub.new_rays()));
        }
        let ray = &sub.new_rays()[0];
        if n >= 3 && ray.iter().all(|&c| c > 0) {
            let t = sub.ray_function(ray);
            if !pushforward(&t, sub, base)?.is_zero() {
                report.failures.push(format!("push(t) != 0 for {ray:?}"));
            }
        }
    }
    let cases: Vec<(usize, Case)> = (0..cfg.functions)
        .map(|i| (i % subs.len(), Case::Push(i)))
        .chain((0..cfg.pairs).map(|i| (i % subs.len(), Case::Projection(i))))
        .collect();
    let outcomes = cases
        .par_iter()
        .map(|(s, case)| {
            let (base, sub) = &subs[*s];
            let n = sub.dim();
            let (idx, salt) = match case {
                Case::Push(i) => (*i, 0u64),
                Case::Projection(i) => (*i, 1u64 << 32),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ salt ^ idx as u64);
            let f = random_piecewise(sub, cfg.max_degree, &mut rng);
            let pushed = match pushforward(&f, sub, base) {
                Ok(p) => p,
                Err(e) => return Ok(Some(format!("case {idx}: {e}"))),
            };
            match case {
                Case::Push(_) => {
                    // resample points where a dual form vanishes
                    let (x, direct) = loop {
                        let x = random_point(n, &mut rng);
                        if let Ok(v) = pushforward_at(&f, sub, base, &x) {
                            break (x, v);
                        }
                    };
                    Ok((pushed.eval(&x) != direct).then(|| format!("case {idx}: value mismatch at a random point")))
                }
                Case::Projection(_) => {
                    let g = random_polynomial(n, cfg.max_degree, &mut rng);
                    let lhs = pushforward(&pullback(&g, sub).mul(&f), sub, base)?;
                    Ok((lhs != g.mul(&pushed)).then(|| format!("pair {idx}: projection formula fails")))
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    report.pushforwards = cfg.functions;
    report.projection_pairs = cfg.pairs;
    report.failures.extend(outcomes.into_iter().flatten());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let cfg = ToricSuiteConfig {
            functions: 6,
            pairs: 6,
            ..Default::default()
        };
        let rep = toric_suite(&cfg).unwrap();
        assert!(rep.success(), "{:?}", rep.failures);
    }

    #[test]
    fn random_piecewise_agrees_on_faces() {
        let sub = star_subdivide(&Cone::orthant(3), &[1, 2, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_piecewise(&sub, 3, &mut rng);
        f.check_faces(&sub).unwrap();
        assert!(f.degree() <= 3);
    }
}
