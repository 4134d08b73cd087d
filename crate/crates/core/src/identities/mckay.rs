use crate::error::Result;
use crate::field::Rational;
use crate::localization::{ell_ak_resolution, ell_hilb, ell_orb_cyclic, ell_orb_sym, AkTorus, Normalization};
use crate::series::Direction;

use super::plan::{EllTarget, VerificationWindow};
use super::report::{compare_series, VerificationReport};

/// Orbifold genus of C²/Z_k against its minimal resolution.
pub fn verify_mckay_ak(
    k: u32,
    q_max: Rational,
    t_span: u32,
    dir: Direction,
    torus: AkTorus,
    norm: Normalization,
) -> Result<VerificationReport> {
    let window = VerificationWindow {
        q_max,
        p_max: 0,
        t_span: t_span as i32,
    };
    let ctx = EllTarget::AkOrb(k).context(&window, dir, torus)?;
    let (orb, res) = rayon::join(
        || ell_orb_cyclic(k, &ctx, torus, norm),
        || ell_ak_resolution(k, &ctx, torus),
    );
    let mut report = compare_series(&format!("mckay-ak k={k}"), &orb?, &res?, &window)?;
    report.details = serde_json::json!({ "k": k, "torus": torus, "normalization": norm });
    Ok(report)
}

/// Symmetric-product orbifold against the Hilbert scheme.
pub fn verify_orb_hilb(n: u32, q_max: Rational, t_span: u32, dir: Direction, norm: Normalization) -> Result<VerificationReport> {
    let window = VerificationWindow {
        q_max,
        p_max: 0,
        t_span: t_span as i32,
    };
    let ctx = EllTarget::OrbSym(n).context(&window, dir, AkTorus::Full)?;
    let (orb, hilb) = rayon::join(|| ell_orb_sym(n, &ctx, norm), || ell_hilb(n, &ctx));
    let mut report = compare_series(&format!("orb-hilb n={n}"), &orb?, &hilb?, &window)?;
    report.details = serde_json::json!({ "n": n, "normalization": norm });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_low_order() {
        let dir = Direction::default();
        let rep = verify_mckay_ak(2, Rational::new(1, 2), 1, dir, AkTorus::Full, Normalization::YShift).unwrap();
        assert!(rep.success(), "{:?}", rep.mismatches);
        let rep = verify_mckay_ak(2, Rational::new(1, 2), 1, dir, AkTorus::Full, Normalization::Bare).unwrap();
        assert!(!rep.success());
    }

    #[test]
    fn orbifold_two_points() {
        let rep = verify_orb_hilb(2, Rational::new(1, 2), 1, Direction::default(), Normalization::YShift).unwrap();
        assert!(rep.success(), "{:?}", rep.mismatches);
    }
}
