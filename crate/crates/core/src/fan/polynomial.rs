//! Sparse multivariate polynomials over Q in variables `x1..xn`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::ONE)
    }

    /// The coordinate function `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::ONE);
        p
    }

    /// `Σ coeffs[i]·x_{i+1}`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::ZERO;
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                c.to_f64()
                    * point
                        .iter()
                        .zip(e)
                        .map(|(x, &k)| x.powi(k as i32))
                        .product::<f64>()
            })
            .sum()
    }

    /// Substitutes `x_i ↦ images[i]` (all images over a common variable set).
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        let nv = images.first().map_or(0, |p| p.nvars);
        let mut out = Self::zero(nv);
        for (e, c) in &self.terms {
            let mut t = Self::constant(nv, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&img.pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Division by a nonzero linear form; returns quotient and remainder.
    ///
    /// The remainder is free of the pivot variable (the first variable with
    /// a nonzero coefficient in `form`), so it vanishes iff `form` divides.
    pub fn div_linear(&self, form: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let (k, a) = (0..self.nvars)
            .find_map(|k| {
                let mut e = vec![0; self.nvars];
                e[k] = 1;
                form.terms.get(&e).map(|c| (k, c.clone()))
            })
            .ok_or_else(|| Error::Invariant("division by a form without linear part".into()))?;
        if form.degree() != 1 || form.terms.keys().any(|e| e.iter().sum::<u32>() == 0) {
            return Err(Error::Invariant("divisor must be a homogeneous linear form".into()));
        }
        let a_inv = a.checked_inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        loop {
            let top = rem.terms.keys().map(|e| e[k]).max().unwrap_or(0);
            if top == 0 {
                break;
            }
            let mut step = Self::zero(self.nvars);
            for (e, c) in rem.terms.iter().filter(|(e, _)| e[k] == top) {
                let mut f = e.clone();
                f[k] -= 1;
                step.add_term(f, c * &a_inv);
            }
            rem = rem.sub(&step.mul(form));
            quot = quot.add(&step);
        }
        Ok((quot, rem))
    }

    /// Parses expressions such as `3/2*x1^2*x2 - x3 + 1`.
    pub fn parse(s: &str, nvars: usize) -> Result<Polynomial> {
        let err = |m: String| Error::Parse(format!("polynomial {s:?}: {m}"));
        let mut out = Self::zero(nvars);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (Rational::from_int(-1), b),
                None => (Rational::ONE, term.strip_prefix('+').unwrap_or(&term)),
            };
            if body.is_empty() {
                return Err(err("dangling sign".into()));
            }
            let mut coeff = sign;
            let mut e = vec![0u32; nvars];
            for factor in body.split('*') {
                if let Some(v) = factor.strip_prefix('x') {
                    let (idx, pow) = match v.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| err(format!("bad exponent in {factor}")))?),
                        None => (v, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err(format!("bad variable {factor}")))?;
                    if idx == 0 || idx > nvars {
                        return Err(err(format!("variable {factor} outside x1..x{nvars}")));
                    }
                    e[idx - 1] += pow;
                } else {
                    let c: Rational = factor.parse().map_err(|_| err(format!("bad factor {factor:?}")))?;
                    coeff = &coeff * &c;
                }
            }
            out.add_term(e, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, then reverse lexicographic exponents
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print_round_trip() {
        for s in ["0", "1", "x1", "-x2 + 3", "3/2*x1^2*x2 - x3 + 1", "x1*x2*x3 - 2*x1"] {
            let p = Polynomial::parse(s, 3).unwrap();
            assert_eq!(Polynomial::parse(&p.to_string(), 3).unwrap(), p);
        }
        assert_eq!(Polynomial::parse("x1 - x1", 2).unwrap().to_string(), "0");
        assert!(Polynomial::parse("x4", 3).is_err());
        assert!(Polynomial::parse("2*y", 3).is_err());
    }

    #[test]
    fn exact_division() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let form = x.sub(&y);
        let p = form.mul(&x.add(&y)).mul(&x);
        let (q, r) = p.div_linear(&form).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, x.add(&y).mul(&x));
        let (_, r) = x.mul(&x).add(&Polynomial::one(2)).div_linear(&form).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn composition() {
        let p = Polynomial::parse("x1^2 - x2", 2).unwrap();
        let imgs = [Polynomial::parse("x1 + x2", 2).unwrap(), Polynomial::parse("2*x1*x2", 2).unwrap()];
        assert_eq!(p.compose(&imgs), Polynomial::parse("x1^2 + x2^2", 2).unwrap());
    }
}
