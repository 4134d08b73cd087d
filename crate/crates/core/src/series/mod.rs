//! Sparse truncated Laurent series in `p, q, y, t1, t2`.
//!
//! Exponents of `q` and `y` are numerators over per-context denominators.
//! Every product is truncated to the context windows, and optionally to a
//! [`Grading`] cap; mixed-sign binomials are expanded according to the
//! context [`Direction`].

mod context;
mod core;
mod expand;
mod io;
mod numeric;

pub use self::context::{Direction, Exponent, Grading, SeriesContext, Windows};
pub use self::core::Series;
pub use self::expand::{
    exp_series, expand_binomial_inverse, expand_binomial_inverse_weight, log1m_accumulate,
    one_minus, q_section, Monomial,
};
pub(crate) use self::expand::check_atom;
pub use self::io::{Denominators, SeriesDump, SeriesHeader, SeriesRecord, SCHEMA_VERSION};
pub use self::numeric::{evaluate_numeric, NumericValue, SeriesPoint};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::{FieldElement, Rational};

    fn ctx(qmax: i32, pmax: i32) -> Arc<SeriesContext> {
        Arc::new(SeriesContext::standard(qmax, pmax, -6, 6, Direction::default()))
    }

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn poly(c: &Arc<SeriesContext>, terms: &[(Exponent, i64)]) -> Series {
        Series::from_terms(c, terms.iter().map(|(e, n)| (*e, fe(*n)))).unwrap()
    }

    #[test]
    fn small_products() {
        let c = ctx(4, 0);
        let a = poly(&c, &[(Exponent::ZERO, 1), (Exponent::q(1), 1)]);
        let b = poly(&c, &[(Exponent::ZERO, 1), (Exponent::q(1), -1)]);
        assert_eq!(a.mul(&b).unwrap(), poly(&c, &[(Exponent::ZERO, 1), (Exponent::q(2), -1)]));

        let y = poly(&c, &[(Exponent::y(2), 1), (Exponent::y(-2), 1)]);
        let y1 = poly(&c, &[(Exponent::y(2), 1)]);
        assert_eq!(y.mul(&y1).unwrap(), poly(&c, &[(Exponent::y(4), 1), (Exponent::ZERO, 1)]));

        let geo = poly(&c, &(0..=4).map(|a| (Exponent::q(a), 1)).collect::<Vec<_>>());
        assert_eq!(geo.mul(&b).unwrap(), Series::one(&c));
    }

    #[test]
    fn mismatched_contexts() {
        let a = Series::one(&ctx(2, 0));
        let b = Series::one(&ctx(3, 0));
        assert!(matches!(a.mul(&b), Err(crate::Error::ContextMismatch)));
    }

    #[test]
    fn invert_examples() {
        let c = ctx(4, 0);
        let a = poly(&c, &[(Exponent::ZERO, 1), (Exponent { q: 1, t1: 1, ..Exponent::ZERO }, -1)]);
        let inv = a.invert_unit().unwrap();
        assert_eq!(inv.len(), 5);
        assert_eq!(inv.coeff(&Exponent { q: 3, t1: 3, ..Exponent::ZERO }), fe(1));

        let two = Series::constant(&c, fe(2));
        assert_eq!(
            two.invert_unit().unwrap(),
            Series::constant(&c, FieldElement::Rational(Rational::new(1, 2)))
        );

        let b = poly(&c, &[(Exponent::y(2), 1), (Exponent::q(1), -1)]);
        let binv = b.invert_unit().unwrap();
        assert_eq!(binv.mul(&b).unwrap(), Series::one(&c));
        assert_eq!(binv.coeff(&Exponent { q: 2, y: -6, ..Exponent::ZERO }), fe(1));
    }

    #[test]
    fn binomial_directions() {
        let c = ctx(3, 0);
        let m = Monomial::unit(Exponent { q: 1, t1: 1, ..Exponent::ZERO });
        assert_eq!(expand_binomial_inverse(&c, &m).unwrap().len(), 4);

        let t1 = Monomial::unit(Exponent::t(1, 0));
        let s = expand_binomial_inverse(&c, &t1).unwrap();
        assert_eq!(s.len(), 7);

        let mixed = Monomial::unit(Exponent::t(-1, 1));
        let s = expand_binomial_inverse(&c, &mixed).unwrap();
        assert_eq!(s.coeff(&Exponent::t(1, -1)), fe(-1));
        assert_eq!(s.coeff(&Exponent::t(2, -2)), fe(-1));
        assert_eq!(s.coeff(&Exponent::ZERO), fe(0));
        // the box edge carries the cancelling partner of the first dropped term
        let back = s.mul(&one_minus(&c, &mixed).unwrap()).unwrap();
        assert_eq!(back.filter(|e| e.t1 < 6), Series::one(&c));

        let flat = Monomial::unit(Exponent::t(2, -3));
        assert!(matches!(
            expand_binomial_inverse(&c, &flat),
            Err(crate::Error::AmbiguousDirection(_))
        ));
    }

    #[test]
    fn log_and_exp() {
        let c = ctx(2, 3);
        let acc = log1m_accumulate(&Series::zero(&c), &Monomial::unit(Exponent::p(1)), 1).unwrap();
        assert_eq!(acc.coeff(&Exponent::p(3)), FieldElement::Rational(Rational::new(1, 3)));

        let c2 = ctx(2, 2);
        let m = Monomial::unit(Exponent { p: 1, q: 1, ..Exponent::ZERO });
        let acc = log1m_accumulate(&Series::zero(&c2), &m, -2).unwrap();
        assert_eq!(acc.len(), 2);
        assert_eq!(acc.coeff(&Exponent { p: 2, q: 2, ..Exponent::ZERO }), fe(-1));

        assert_eq!(exp_series(&Series::zero(&c)).unwrap(), Series::one(&c));
        let e = exp_series(&Series::monomial(&c, Exponent::p(1), fe(1))).unwrap();
        assert_eq!(e.coeff(&Exponent::p(3)), FieldElement::Rational(Rational::new(1, 6)));

        let l = log1m_accumulate(&Series::zero(&c), &Monomial::unit(Exponent::p(1)), -1).unwrap();
        assert_eq!(
            exp_series(&l).unwrap(),
            poly(&c, &[(Exponent::ZERO, 1), (Exponent::p(1), -1)])
        );
        assert!(log1m_accumulate(&Series::zero(&c), &Monomial::unit(Exponent::q(1)), 1).is_err());
        assert!(exp_series(&Series::one(&c)).is_err());
    }

    #[test]
    fn sections() {
        let c = ctx(4, 0);
        let a = poly(&c, &[(Exponent::ZERO, 1), (Exponent::q(1), 1), (Exponent::q(2), 1)]);
        assert_eq!(
            q_section(&a, 2).unwrap(),
            poly(&c, &[(Exponent::ZERO, 1), (Exponent::q(1), 1)])
        );
        let b = poly(&c, &[(Exponent { q: 3, y: 2, t1: 1, ..Exponent::ZERO }, 1)]);
        assert_eq!(
            q_section(&b, 3).unwrap(),
            poly(&c, &[(Exponent { q: 1, y: 2, t1: 1, ..Exponent::ZERO }, 1)])
        );
    }

    #[test]
    fn numeric_values() {
        use num_complex::Complex64;
        let c = Arc::new(SeriesContext::standard(40, 0, -40, 40, Direction::default()));
        let one = Complex64::new(1.0, 0.0);
        let a = poly(&c, &[(Exponent::ZERO, 1), (Exponent::q(1), 1)]);
        let pt = SeriesPoint::from_values(one, Complex64::new(0.1, 0.0), one, one, one);
        assert!((evaluate_numeric(&a, &pt).value - Complex64::new(1.1, 0.0)).norm() < 1e-14);

        let m = Monomial::unit(Exponent { q: 1, t1: 1, ..Exponent::ZERO });
        let g = expand_binomial_inverse(&c, &m).unwrap();
        let pt = SeriesPoint::from_values(one, Complex64::new(0.1, 0.0), one, Complex64::new(0.5, 0.0), one);
        let v = evaluate_numeric(&g, &pt);
        assert!((v.value.re - 1.0 / 0.95).abs() < 1e-12);
        assert_eq!(evaluate_numeric(&Series::zero(&c), &pt).value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn json_round_trip() {
        let c = ctx(3, 1);
        let a = poly(&c, &[(Exponent { q: 2, y: -1, t1: -3, t2: 2, p: 1 }, 7), (Exponent::ZERO, -2)])
            .add(&Series::monomial(&c, Exponent::y(1), FieldElement::root_of_unity(5, 2)))
            .unwrap();
        let js = a.to_json().unwrap();
        let b = Series::from_json(&js).unwrap();
        assert_eq!(a, b);
        assert_eq!(js, b.to_json().unwrap());
    }
}
