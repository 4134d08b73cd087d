use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Rational;

use super::cone::Cone;
use super::polynomial::Polynomial;
use super::subdivision::{PiecewisePolynomial, Subdivision};

/// Primitive integer representative of a rational linear form (first nonzero
/// entry positive) and the scalar `s` with `form = s·representative`.
fn normalize_form(form: &[Rational]) -> (Vec<i64>, Rational) {
    let den = form
        .iter()
        .fold(num_bigint::BigInt::from(1), |l, c| num_integer::Integer::lcm(&l, &c.denom()));
    let den = Rational::from_bigint(den);
    let ints: Vec<i64> = form
        .iter()
        .map(|c| i64::try_from((c * &den).numer()).expect("small linear form"))
        .collect();
    let g = ints.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    let sign = ints.iter().find(|&&x| x != 0).map_or(1, |x| x.signum());
    let g = g * sign;
    let rep: Vec<i64> = ints.iter().map(|x| x / g).collect();
    (rep, &Rational::from_int(g) / &den)
}

fn form_poly(rep: &[i64]) -> Polynomial {
    Polynomial::linear(&rep.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>())
}

/// `(ν_* f)_K = Σ_i d_i f_i ∏_j x^K_j / ∏_j x^{C_i}_j`, brought over the
/// product of all distinct cone forms and divided out exactly.
pub fn pushforward(f: &PiecewisePolynomial, sub: &Subdivision, target: &Cone) -> Result<Polynomial> {
    let n = sub.dim();
    if f.polys.len() != sub.cones.len() || target.dim() != n {
        return Err(Error::Invariant("piecewise polynomial does not match the subdivision".into()));
    }
    let normalized: Vec<Vec<(Vec<i64>, Rational)>> = sub
        .cones
        .iter()
        .map(|c| c.cone.dual_forms().iter().map(|r| normalize_form(r)).collect())
        .collect();
    let mut distinct: Vec<Vec<i64>> = normalized.iter().flatten().map(|(r, _)| r.clone()).collect();
    distinct.sort();
    distinct.dedup();
    let target_product = target
        .dual_polynomials()
        .iter()
        .fold(Polynomial::one(n), |acc, p| acc.mul(p));
    let terms: Vec<Polynomial> = sub
        .cones
        .par_iter()
        .zip(&f.polys)
        .zip(&normalized)
        .map(|((sc, fi), forms)| {
            let scalar = forms.iter().fold(Rational::ONE, |acc, (_, s)| &acc * s);
            let cofactor = distinct
                .iter()
                .filter(|d| !forms.iter().any(|(r, _)| r == *d))
                .fold(Polynomial::one(n), |acc, d| acc.mul(&form_poly(d)));
            let weight = &Rational::from_int(sc.multiplicity as i64) / &scalar;
            fi.mul(&target_product).mul(&cofactor).scale(&weight)
        })
        .collect();
    let mut numerator = terms.iter().fold(Polynomial::zero(n), |acc, t| acc.add(t));
    for d in &distinct {
        let (quot, rem) = numerator.div_linear(&form_poly(d))?;
        if !rem.is_zero() {
            return Err(Error::NonPolynomial(format!("{} (remainder {rem})", form_poly(d))));
        }
        numerator = quot;
    }
    Ok(numerator)
}

/// The same fraction sum evaluated at a rational point (no simplification).
pub fn pushforward_at(f: &PiecewisePolynomial, sub: &Subdivision, target: &Cone, point: &[Rational]) -> Result<Rational> {
    let target_val = target
        .dual_polynomials()
        .iter()
        .fold(Rational::ONE, |acc, p| &acc * &p.eval(point));
    let mut acc = Rational::ZERO;
    for (sc, fi) in sub.cones.iter().zip(&f.polys) {
        let den = sc
            .cone
            .dual_polynomials()
            .iter()
            .fold(Rational::ONE, |a, p| &a * &p.eval(point));
        let term = (&(&fi.eval(point) * &target_val) * &Rational::from_int(sc.multiplicity as i64)).checked_div(&den)?;
        acc = &acc + &term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::subdivision::{pullback, star_subdivide};

    #[test]
    fn unit_pushes_to_unit() {
        for (n, ray) in [(2, vec![1, 1]), (3, vec![1, 1, 1]), (3, vec![0, 1, 1])] {
            let k = Cone::orthant(n);
            let sub = star_subdivide(&k, &ray).unwrap();
            let one = PiecewisePolynomial::constant(&sub, Rational::ONE);
            assert_eq!(pushforward(&one, &sub, &k).unwrap(), Polynomial::one(n));
        }
    }

    #[test]
    fn exceptional_powers_in_three_dimensions() {
        let k = Cone::orthant(3);
        let sub = star_subdivide(&k, &[1, 1, 1]).unwrap();
        let t = sub.ray_function(&[1, 1, 1]);
        assert!(pushforward(&t, &sub, &k).unwrap().is_zero());
        let expected = ["0", "x1*x2*x3", "x1^2*x2*x3 + x1*x2^2*x3 + x1*x2*x3^2"];
        for (e, want) in (2..=4).zip(expected) {
            let pushed = pushforward(&t.pow(e), &sub, &k).unwrap();
            assert_eq!(pushed, Polynomial::parse(want, 3).unwrap());
            for p in [[1, 2, 3], [5, -1, 7], [2, 9, -4]] {
                let p: Vec<Rational> = p.iter().map(|&v| Rational::from_int(v)).collect();
                assert_eq!(pushed.eval(&p), pushforward_at(&t.pow(e), &sub, &k, &p).unwrap());
            }
        }
    }

    #[test]
    fn pullback_round_trip() {
        let k = Cone::orthant(2);
        let sub = star_subdivide(&k, &[1, 1]).unwrap();
        let g = Polynomial::parse("x1^2 - 3*x1*x2 + 2", 2).unwrap();
        assert_eq!(pushforward(&pullback(&g, &sub), &sub, &k).unwrap(), g);
    }

    #[test]
    fn broken_subdivision_is_not_polynomial() {
        let k = Cone::orthant(2);
        let mut sub = star_subdivide(&k, &[1, 1]).unwrap();
        sub.cones.truncate(1);
        let one = PiecewisePolynomial::constant(&sub, Rational::ONE);
        assert!(matches!(pushforward(&one, &sub, &k), Err(Error::NonPolynomial(_))));
    }
}
