//! Theta-function ratios: exact q-expansions and numeric evaluation.
//!
//! Convention:
//! `θ(v,τ) = q^{1/8}·2 sin(πv)·∏_{l≥1}(1-q^l)(1-q^l x)(1-q^l x⁻¹)` with
//! `x = e^{2πiv}`, `q = e^{2πiτ}`, so `θ'(0) = 2π q^{1/8} ∏(1-q^l)³`.
//!
//! The exact side only ever needs ratios `θ(v - cz)/θ(v)` where
//! `v = x + α - βτ`; the `q^{1/8}` and `(1-q^l)` factors cancel there.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational};
use crate::series::{check_atom, Exponent, Monomial, Series, SeriesContext, SeriesPoint};

/// One factor `θ(t^w + α - βτ - cz)/θ(t^w + α - βτ)`, optionally times `y^{cβ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaRatioSpec {
    pub w: (i32, i32),
    pub alpha: Rational,
    pub beta: Rational,
    pub jacobi_c: Rational,
    pub include_y_shift: bool,
}

impl ThetaRatioSpec {
    /// Plain factor `θ(x - z)/θ(x)` for the weight `w`.
    pub fn plain(w: (i32, i32)) -> Self {
        ThetaRatioSpec {
            w,
            alpha: Rational::ZERO,
            beta: Rational::ZERO,
            jacobi_c: Rational::ONE,
            include_y_shift: false,
        }
    }

    /// Character-shifted factor with the `y^{cβ}` normalization.
    pub fn twisted(w: (i32, i32), alpha: Rational, beta: Rational) -> Self {
        ThetaRatioSpec {
            w,
            alpha,
            beta,
            jacobi_c: Rational::ONE,
            include_y_shift: true,
        }
    }

    fn reduced_beta(&self) -> (Rational, i64) {
        let shift = self.beta.floor();
        let n: i64 = shift.try_into().expect("beta integer part fits in i64");
        (self.beta.fract_part(), n)
    }

    /// Smallest q-slope making every expansion atom of this factor have
    /// grade at least 1, for q-numerators over `dq`.
    pub fn min_q_slope(&self, dq: u32, delta_w: i64) -> i64 {
        let (b0, _) = self.reduced_beta();
        let bnum = &b0 * &Rational::from_int(dq as i64);
        let bnum = bnum.to_f64().round() as i64;
        let dq = dq as i64;
        let need = |cost: i64, tilt: i64| -> i64 {
            // tilt + s·cost >= 1
            if cost <= 0 {
                return 1;
            }
            ((1 - tilt) as f64 / cost as f64).ceil().max(1.0) as i64
        };
        let mut s = 1;
        if bnum > 0 {
            s = s.max(need(bnum, -delta_w));
        }
        s = s.max(need(dq - bnum, delta_w));
        s = s.max(need(dq + bnum, -delta_w));
        s
    }
}

fn numerator_over(r: &Rational, d: u32, what: &'static str) -> Result<i32> {
    let scaled = r * &Rational::from_int(d as i64);
    match scaled.as_small() {
        Some((n, 1)) => i32::try_from(n).map_err(|_| Error::Denominator {
            variable: what,
            value: r.to_string(),
            denominator: d,
        }),
        _ => Err(Error::Denominator {
            variable: what,
            value: r.to_string(),
            denominator: d,
        }),
    }
}

fn root_of_unity(alpha: &Rational) -> Result<FieldElement> {
    let a = alpha.fract_part();
    let (n, d) = a
        .as_small()
        .ok_or_else(|| Error::Invariant(format!("shift {alpha} has a huge denominator")))?;
    let order = u32::try_from(d).map_err(|_| Error::Invariant(format!("shift {alpha} too fine")))?;
    if order > crate::field::order_cap() {
        return Err(Error::OrderCap {
            requested: order as u64,
            cap: crate::field::order_cap(),
        });
    }
    Ok(FieldElement::root_of_unity(order, n))
}

/// `(1 - y^a·M)/(1 - M)` expanded under the direction policy.
///
/// For small M this is `1 + (1 - y^a)·Σ_{j≥1} M^j`; for large M it is
/// rewritten as `y^a (1 - y^{-a} M⁻¹)/(1 - M⁻¹)`.
fn binomial_ratio(ctx: &Arc<SeriesContext>, m: &Monomial, y_num: i32) -> Result<Series> {
    if m.exp.is_zero() {
        // Z is a root of unity times 1: a constant ratio
        let den = FieldElement::one().checked_sub(&m.coeff)?;
        if den.is_zero() {
            return Err(Error::ThetaPole("theta(0) in a denominator".into()));
        }
        let num = crate::series::one_minus(ctx, &Monomial::new(Exponent::y(y_num), m.coeff.clone()))?;
        return num.scale(&den.checked_inv()?);
    }
    match ctx.smallness(&m.exp) {
        std::cmp::Ordering::Greater => {
            check_atom(ctx, &m.exp)?;
            let mut terms = Vec::new();
            let mut e = m.exp;
            let mut c = m.coeff.clone();
            while ctx.keeps(&e) || ctx.keeps(&(e + Exponent::y(y_num))) {
                terms.push((e, c.clone()));
                terms.push(((e + Exponent::y(y_num)), c.neg_ref()));
                e = e + m.exp;
                c = c.checked_mul(&m.coeff)?;
            }
            terms.push((Exponent::ZERO, FieldElement::one()));
            Series::from_terms(ctx, terms)
        }
        std::cmp::Ordering::Less => {
            let inv = m.inverse()?;
            binomial_ratio(ctx, &inv, -y_num)?.mul_monomial(Exponent::y(y_num), &FieldElement::one())
        }
        std::cmp::Ordering::Equal => Err(Error::AmbiguousDirection(ctx.fmt_monomial(&m.exp))),
    }
}

/// Exact expansion of one theta ratio in the given context.
///
/// Computes `y^{-c/2}(1 - y^c Z⁻¹)/(1 - Z⁻¹) · ∏_{l≥1} (1-q^l Z y^{-c})(1-q^l Z⁻¹ y^c)/((1-q^l Z)(1-q^l Z⁻¹))`
/// with `Z = t^w ζ^α q^{-β}`, after reducing β to `[0,1)` by
/// quasi-periodicity (each unit step contributes `y^{-c}`).
pub fn theta_ratio(spec: &ThetaRatioSpec, ctx: &Arc<SeriesContext>) -> Result<Series> {
    let c = &spec.jacobi_c;
    if c.is_zero() {
        return Ok(Series::one(ctx));
    }
    let (b0, n) = spec.reduced_beta();
    let alpha = spec.alpha.fract_part();
    let c_num = numerator_over(c, ctx.dy, "y")?;
    let half_c = numerator_over(&(c * &Rational::new(1, 2)), ctx.dy, "y")?;
    let bq = numerator_over(&b0, ctx.dq, "q")?;
    let y_shift = if spec.include_y_shift {
        numerator_over(&(c * &b0), ctx.dy, "y")?
    } else {
        numerator_over(&(c * &Rational::from_int(-n)), ctx.dy, "y")?
    };
    let zeta = root_of_unity(&alpha)?;
    let zeta_inv = zeta.checked_inv()?;

    let w = Exponent::t(spec.w.0, spec.w.1);
    if w.is_zero() && alpha.is_zero() && b0.is_zero() {
        return Err(Error::ThetaPole(format!(
            "weight 0 with zero shifts and c = {c}"
        )));
    }

    // q^0 factor
    let z_inv = Monomial::new(Exponent { q: bq, ..-w }, zeta_inv.clone());
    let mut acc = binomial_ratio(ctx, &z_inv, c_num)?.mul_monomial(Exponent::y(-half_c), &FieldElement::one())?;

    let qmax = ctx.windows.q.1;
    let dq = ctx.dq as i32;
    let mut l = 1;
    while l * dq - bq <= qmax {
        let qz = Monomial::new(Exponent { q: l * dq - bq, ..w }, zeta.clone());
        let qz_inv = Monomial::new(Exponent { q: l * dq + bq, ..-w }, zeta_inv.clone());
        if let Some(g) = &ctx.grading {
            // grades grow with l, and a factor whose atom exceeds the cap is 1
            if ctx.grade(&qz.exp) > g.cap && ctx.grade(&qz_inv.exp) > g.cap {
                break;
            }
        }
        acc = acc.mul(&binomial_ratio(ctx, &qz, -c_num)?)?;
        if qz_inv.exp.q <= qmax {
            acc = acc.mul(&binomial_ratio(ctx, &qz_inv, c_num)?)?;
        }
        l += 1;
    }
    if y_shift != 0 {
        acc = acc.mul_monomial(Exponent::y(y_shift), &FieldElement::one())?;
    }
    Ok(acc)
}

/// Truncated-product theta value and an estimate of the neglected tail.
#[derive(Clone, Copy, Debug)]
pub struct ThetaValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

fn nome(tau: Complex64) -> Result<Complex64> {
    if tau.im <= 0.0 {
        return Err(Error::TauNotInUpperHalfPlane(tau.im));
    }
    Ok((Complex64::new(0.0, TAU) * tau).exp())
}

/// `θ(v, τ)` from the product truncated at `l = L`.
pub fn theta_numeric(v: Complex64, tau: Complex64, l_max: u32) -> Result<ThetaValue> {
    let q = nome(tau)?;
    let i2pi = Complex64::new(0.0, TAU);
    let x = (i2pi * v).exp();
    let xi = x.inv();
    let mut r = (i2pi * tau / 8.0).exp() * 2.0 * (v * PI).sin();
    let mut ql = Complex64::new(1.0, 0.0);
    for _ in 0..l_max.max(1) {
        ql *= q;
        r *= (1.0 - ql) * (1.0 - ql * x) * (1.0 - ql * xi);
    }
    let qa = q.norm();
    let spread = x.norm().max(xi.norm()) + 1.0;
    let tail = r.norm() * 2.0 * spread * qa.powi(l_max as i32 + 1) / (1.0 - qa);
    Ok(ThetaValue { value: r, tail_bound: tail })
}

/// `θ'(0, τ) = 2π q^{1/8} ∏ (1 - q^l)³`.
pub fn theta_prime_zero(tau: Complex64, l_max: u32) -> Result<Complex64> {
    let q = nome(tau)?;
    let mut r = (Complex64::new(0.0, TAU) * tau / 8.0).exp() * TAU;
    let mut ql = Complex64::new(1.0, 0.0);
    for _ in 0..l_max.max(1) {
        ql *= q;
        r *= (1.0 - ql).powi(3);
    }
    Ok(r)
}

/// Denominators below this magnitude are treated as hitting a pole.
pub const POLE_GUARD: f64 = 1e-12;

fn guarded(v: Complex64, what: &str) -> Result<Complex64> {
    if v.norm() < POLE_GUARD {
        Err(Error::PoleAtSample(format!("{what} vanishes; resample")))
    } else {
        Ok(v)
    }
}

/// Numeric divisor factor relative to the plain factor:
/// `θ(v - (1-a)z)·θ(z) / (θ(v - z)·θ((1-a)z))` with `v = x + α - βτ`.
///
/// As `z → 0` this tends to `1/(1-a)`, which is returned for `|z| < 1e-14`.
pub fn relative_factor_numeric(
    x: Complex64,
    alpha: &Rational,
    beta: &Rational,
    a: &Rational,
    z: Complex64,
    tau: Complex64,
    l_max: u32,
) -> Result<Complex64> {
    let c = (Rational::ONE - a).to_f64();
    if z.norm() < 1e-14 {
        if c == 0.0 {
            return Err(Error::PoleAtSample("coefficient a = 1 at z = 0".into()));
        }
        nome(tau)?;
        return Ok(Complex64::new(1.0 / c, 0.0));
    }
    let v = x + alpha.to_f64() - tau * beta.to_f64();
    let th = |arg: Complex64| theta_numeric(arg, tau, l_max).map(|t| t.value);
    let num = th(v - z * c)? * th(z)?;
    let den = guarded(th(v - z)?, "theta(v - z)")? * guarded(th(z * c)?, "theta((1-a)z)")?;
    Ok(num / den)
}

/// Full divisor factor `θ(v - cz)·θ'(0) / (θ(v)·θ(-cz))`, `v = x + α - βτ`.
pub fn divisor_factor_numeric(v: Complex64, c: f64, z: Complex64, tau: Complex64, l_max: u32) -> Result<Complex64> {
    let th = |arg: Complex64| theta_numeric(arg, tau, l_max).map(|t| t.value);
    let num = th(v - z * c)? * theta_prime_zero(tau, l_max)?;
    let den = guarded(th(v)?, "theta(v)")? * guarded(th(-z * c)?, "theta(-cz)")?;
    Ok(num / den)
}

/// Direct numeric value of the same ratio that [`theta_ratio`] expands.
pub fn theta_ratio_numeric(spec: &ThetaRatioSpec, point: &SeriesPoint, l_max: u32) -> Result<Complex64> {
    let x = point.u1 * spec.w.0 as f64 + point.u2 * spec.w.1 as f64;
    let v = x + spec.alpha.to_f64() - point.tau * spec.beta.to_f64();
    let c = spec.jacobi_c.to_f64();
    let th = |arg: Complex64| theta_numeric(arg, point.tau, l_max).map(|t| t.value);
    let mut r = th(v - point.z * c)? / guarded(th(v)?, "theta(v)")?;
    if spec.include_y_shift {
        r *= (Complex64::new(0.0, TAU) * point.z * (c * spec.beta.to_f64())).exp();
    }
    Ok(r)
}
