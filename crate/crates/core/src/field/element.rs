use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::cyclotomic::CyclotomicElement;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A coefficient: rational, or a genuinely irrational element of some Q(ζ_N).
///
/// Cyclotomic values that happen to be rational are always demoted, so a
/// `Cyclotomic` variant never holds a rational number.
#[derive(Clone)]
pub enum FieldElement {
    Rational(Rational),
    Cyclotomic(CyclotomicElement),
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rational(Rational::ZERO)
    }

    pub fn one() -> Self {
        FieldElement::Rational(Rational::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::Rational(Rational::from_int(n))
    }

    /// ζ_N^j, demoted when rational.
    pub fn root_of_unity(order: u32, j: i64) -> Self {
        Self::from_cyclotomic(CyclotomicElement::root_power(order, j))
    }

    pub fn from_cyclotomic(c: CyclotomicElement) -> Self {
        match c.as_rational() {
            Some(r) => FieldElement::Rational(r.clone()),
            None => FieldElement::Cyclotomic(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Cyclotomic(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Cyclotomic(_) => None,
        }
    }

    /// Cyclotomic order needed to hold the value (1 for rationals).
    pub fn order(&self) -> u32 {
        match self {
            FieldElement::Rational(_) => 1,
            FieldElement::Cyclotomic(c) => c.order(),
        }
    }

    fn to_cyc(&self, order: u32) -> Result<CyclotomicElement> {
        match self {
            FieldElement::Rational(r) => Ok(CyclotomicElement::from_rational(order, r.clone())),
            FieldElement::Cyclotomic(c) => c.lift(order),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => Ok(FieldElement::Rational(a + b)),
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => {
                Ok(Self::from_cyclotomic(a.checked_add(b)?))
            }
            (FieldElement::Cyclotomic(c), FieldElement::Rational(r))
            | (FieldElement::Rational(r), FieldElement::Cyclotomic(c)) => {
                let mut coeffs = c.coeffs().to_vec();
                coeffs[0] = &coeffs[0] + r;
                Ok(Self::from_cyclotomic(CyclotomicElement::from_poly(c.order(), &coeffs)))
            }
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => Ok(FieldElement::Rational(a * b)),
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => {
                Ok(Self::from_cyclotomic(a.checked_mul(b)?))
            }
            (FieldElement::Cyclotomic(c), FieldElement::Rational(r))
            | (FieldElement::Rational(r), FieldElement::Cyclotomic(c)) => {
                Ok(Self::from_cyclotomic(c.scale(r)))
            }
        }
    }

    pub fn checked_inv(&self) -> Result<Self> {
        match self {
            FieldElement::Rational(r) => Ok(FieldElement::Rational(r.checked_inv()?)),
            FieldElement::Cyclotomic(c) => Ok(Self::from_cyclotomic(c.checked_inv()?)),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(a * r),
            FieldElement::Cyclotomic(c) => Self::from_cyclotomic(c.scale(r)),
        }
    }

    pub fn neg_ref(&self) -> Self {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(-r),
            FieldElement::Cyclotomic(c) => FieldElement::Cyclotomic(c.neg()),
        }
    }

    /// Complex value under ζ_N ↦ exp(2πi/N), in double precision.
    pub fn embed_complex(&self) -> Complex64 {
        match self {
            FieldElement::Rational(r) => Complex64::new(r.to_f64(), 0.0),
            FieldElement::Cyclotomic(c) => c.embed_complex(),
        }
    }

    /// Rewrites the value over Q(ζ_order); rationals stay rational.
    pub fn lift_to(&self, order: u32) -> Result<Self> {
        match self {
            FieldElement::Rational(_) => Ok(self.clone()),
            FieldElement::Cyclotomic(_) => Ok(FieldElement::Cyclotomic(self.to_cyc(order)?)),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a == b,
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => a.value_eq(b),
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::Rational(r)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

// Panicking operators for readability in tests and infallible paths; the
// checked_* forms report order-cap failures.
impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field addition")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field subtraction")
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => write!(f, "{r}"),
            FieldElement::Cyclotomic(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for FieldElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.contains(';') {
            Ok(Self::from_cyclotomic(s.parse()?))
        } else {
            Ok(FieldElement::Rational(s.parse()?))
        }
    }
}

impl serde::Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for FieldElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Complex approximation of `a`.
///
/// Evaluation is always in double precision, about 15 significant digits,
/// whatever number of digits is requested.
pub fn embed_complex(a: &FieldElement, _digits: u32) -> Complex64 {
    a.embed_complex()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demotion() {
        let i = FieldElement::root_of_unity(4, 1);
        assert!(matches!(i, FieldElement::Cyclotomic(_)));
        assert_eq!(&i * &i, FieldElement::from_int(-1));
        assert!(matches!(&i * &i, FieldElement::Rational(_)));
        assert_eq!(FieldElement::root_of_unity(2, 1), FieldElement::from_int(-1));
    }

    #[test]
    fn embeddings() {
        let half = FieldElement::Rational(Rational::new(1, 2));
        assert_eq!(embed_complex(&half, 15), Complex64::new(0.5, 0.0));
        let i = embed_complex(&FieldElement::root_of_unity(4, 1), 15);
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let a = &FieldElement::one() + &FieldElement::root_of_unity(3, 1);
        let v = embed_complex(&a, 15);
        assert!((v - Complex64::new(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn mixed_orders() {
        let a = FieldElement::root_of_unity(3, 1);
        let b = FieldElement::root_of_unity(4, 1);
        let p = &a * &b;
        assert_eq!(p, FieldElement::root_of_unity(12, 4 + 3));
        assert_eq!(p.order(), 12);
    }

    #[test]
    fn parse_round_trip() {
        for e in [
            FieldElement::Rational(Rational::new(-7, 3)),
            FieldElement::root_of_unity(5, 2),
        ] {
            let s = e.to_string();
            assert_eq!(s.parse::<FieldElement>().unwrap(), e);
        }
    }
}
