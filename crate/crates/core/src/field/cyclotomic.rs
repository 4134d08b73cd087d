//! Elements of Q(ζ_N) stored as coefficient vectors modulo Φ_N.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use super::rational::{lcm_u64, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: u32 = 48;

static ORDER_CAP: AtomicU32 = AtomicU32::new(DEFAULT_ORDER_CAP);

/// Largest cyclotomic order any operation may produce.
pub fn order_cap() -> u32 {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: u32) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Coefficients of Φ_N, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    tables(n).phi.clone()
}

fn euler_phi(mut n: u32) -> usize {
    let mut result = n as u64;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p as u64;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n as u64;
    }
    result as usize
}

/// Exact quotient of integer polynomials, divisor monic.
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

struct Tables {
    phi: Vec<i64>,
    degree: usize,
    /// `powers[j]` is x^j mod Φ_N for 0 <= j < N.
    powers: Vec<Vec<i64>>,
}

fn tables(n: u32) -> Arc<Tables> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Tables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&n) {
        return t.clone();
    }
    let phi = if n == 1 {
        vec![-1, 1]
    } else {
        let mut p = vec![0i64; n as usize + 1];
        p[0] = -1;
        p[n as usize] = 1;
        for d in 1..n {
            if n.is_multiple_of(d) {
                p = div_monic(&p, &tables(d).phi);
            }
        }
        p
    };
    let degree = phi.len() - 1;
    debug_assert_eq!(degree, euler_phi(n));
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow coefficient
        let top = cur[degree - 1];
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..degree {
                cur[i] -= top * phi[i];
            }
        }
    }
    let t = Arc::new(Tables {
        phi,
        degree,
        powers,
    });
    cache.write().unwrap().insert(n, t.clone());
    t
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicElement {
    pub fn zero(order: u32) -> Self {
        let d = tables(order).degree;
        CyclotomicElement {
            order,
            coeffs: vec![Rational::ZERO; d],
        }
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    /// ζ_N^j for any integer j.
    pub fn root_power(order: u32, j: i64) -> Self {
        let t = tables(order);
        let j = j.rem_euclid(order as i64) as usize;
        CyclotomicElement {
            order,
            coeffs: t.powers[j].iter().map(|&c| Rational::from_int(c)).collect(),
        }
    }

    /// Reduces an arbitrary polynomial in ζ_N (constant first).
    pub fn from_poly(order: u32, poly: &[Rational]) -> Self {
        let t = tables(order);
        let mut coeffs = vec![Rational::ZERO; t.degree];
        for (j, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &t.powers[j % order as usize];
            for (slot, &r) in coeffs.iter_mut().zip(row) {
                if r != 0 {
                    *slot = &*slot + &(c * &Rational::from_int(r));
                }
            }
        }
        CyclotomicElement { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value, if every non-constant coefficient vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the element in Q(ζ_M) for a multiple M of the order.
    pub fn lift(&self, target: u32) -> Result<Self> {
        if target == self.order {
            return Ok(self.clone());
        }
        if !target.is_multiple_of(self.order) {
            return Err(Error::Invariant(format!(
                "cannot lift order {} to {}",
                self.order, target
            )));
        }
        check_cap(target as u64)?;
        let step = (target / self.order) as usize;
        let mut poly = vec![Rational::ZERO; (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_poly(target, &poly))
    }

    pub fn common_order(a: u32, b: u32) -> Result<u32> {
        let l = lcm_u64(a as u64, b as u64).unwrap_or(u64::MAX);
        check_cap(l)?;
        Ok(l as u32)
    }

    fn lifted_pair(&self, other: &Self) -> Result<(Self, Self, u32)> {
        let n = Self::common_order(self.order, other.order)?;
        Ok((self.lift(n)?, other.lift(n)?, n))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.order == other.order {
            return Ok(self.add_same(other));
        }
        let (a, b, _) = self.lifted_pair(other)?;
        Ok(a.add_same(&b))
    }

    fn add_same(&self, other: &Self) -> Self {
        CyclotomicElement {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.order == other.order {
            return Ok(self.mul_same(other));
        }
        let (a, b, _) = self.lifted_pair(other)?;
        Ok(a.mul_same(&b))
    }

    fn mul_same(&self, other: &Self) -> Self {
        let d = self.coeffs.len();
        let mut prod = vec![Rational::ZERO; 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = &prod[i + j] + &(a * b);
                }
            }
        }
        Self::from_poly(self.order, &prod)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CyclotomicElement {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Inverse via the extended Euclidean algorithm in Q[x] against Φ_N.
    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: Vec<Rational> = tables(self.order)
            .phi
            .iter()
            .map(|&c| Rational::from_int(c))
            .collect();
        // invariant: s * a == r (mod Φ_N)
        let (mut r0, mut s0) = (phi, vec![Rational::ZERO]);
        let (mut r1, mut s1) = (trim(self.coeffs.clone()), vec![Rational::ONE]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant because Φ_N is irreducible
        let c = r1[0].checked_inv()?;
        let scaled: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(self.order, &scaled))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn embed_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n) * c.to_f64())
            .sum()
    }

    /// Structural equality after lifting to a common order.
    pub fn value_eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        match self.lifted_pair(other) {
            Ok((a, b, _)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

fn check_cap(order: u64) -> Result<()> {
    let cap = order_cap();
    if order > cap as u64 {
        Err(Error::OrderCap {
            requested: order,
            cap,
        })
    } else {
        Ok(())
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::ZERO);
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::ZERO;
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![Rational::ZERO], trim(rem));
    }
    let lead = b[db].checked_inv().expect("nonzero leading coefficient");
    let mut quot = vec![Rational::ZERO; rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] = &rem[i + j] - &(&c * bj);
        }
        quot[i] = c;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.coeffs.iter().enumerate() {
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, " + {c}*z")?,
                _ => write!(f, " + {c}*z^{j}")?,
            }
        }
        write!(f, "; N={}", self.order)
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for CyclotomicElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("cyclotomic element {s:?}: {m}"));
        let (body, order) = s.split_once(';').ok_or_else(|| bad("missing '; N='"))?;
        let order: u32 = order
            .trim()
            .strip_prefix("N=")
            .ok_or_else(|| bad("missing N="))?
            .parse()
            .map_err(|_| bad("bad order"))?;
        if order == 0 {
            return Err(bad("order must be positive"));
        }
        let mut poly = Vec::new();
        for term in body.split(" + ") {
            let term = term.trim();
            let (c, pow) = match term.split_once('*') {
                None => (term, 0usize),
                Some((c, "z")) => (c, 1),
                Some((c, z)) => (
                    c,
                    z.strip_prefix("z^")
                        .and_then(|e| e.parse().ok())
                        .ok_or_else(|| bad("bad power"))?,
                ),
            };
            if poly.len() <= pow {
                poly.resize(pow + 1, Rational::ZERO);
            }
            poly[pow] = &poly[pow] + &c.parse::<Rational>()?;
        }
        Ok(Self::from_poly(order, &poly))
    }
}
