use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector. `q` and `y` are numerators over the context
/// denominators; `p`, `t1`, `t2` are plain integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Exponent {
    pub p: i32,
    pub q: i32,
    pub t1: i32,
    pub t2: i32,
    pub y: i32,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent {
        p: 0,
        q: 0,
        t1: 0,
        t2: 0,
        y: 0,
    };

    pub fn t(t1: i32, t2: i32) -> Self {
        Exponent {
            t1,
            t2,
            ..Self::ZERO
        }
    }

    pub fn q(q: i32) -> Self {
        Exponent { q, ..Self::ZERO }
    }

    pub fn y(y: i32) -> Self {
        Exponent { y, ..Self::ZERO }
    }

    pub fn p(p: i32) -> Self {
        Exponent { p, ..Self::ZERO }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn scale(self, k: i32) -> Exponent {
        Exponent {
            p: self.p * k,
            q: self.q * k,
            t1: self.t1 * k,
            t2: self.t2 * k,
            y: self.y * k,
        }
    }
}

impl std::ops::Add for Exponent {
    type Output = Exponent;

    #[inline]
    fn add(self, o: Exponent) -> Exponent {
        Exponent {
            p: self.p + o.p,
            q: self.q + o.q,
            t1: self.t1 + o.t1,
            t2: self.t2 + o.t2,
            y: self.y + o.y,
        }
    }
}

impl std::ops::Neg for Exponent {
    type Output = Exponent;

    fn neg(self) -> Exponent {
        self.scale(-1)
    }
}

impl std::ops::Sub for Exponent {
    type Output = Exponent;

    fn sub(self, o: Exponent) -> Exponent {
        self + (-o)
    }
}

/// Expansion direction δ(k1, k2) = d1·k1 + d2·k2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Direction {
    pub d1: i64,
    pub d2: i64,
}

impl Direction {
    pub fn new(d1: i64, d2: i64) -> Result<Self> {
        if d1 <= 0 || d2 <= 0 {
            return Err(Error::InvalidContext(format!(
                "direction entries must be positive, got ({d1},{d2})"
            )));
        }
        if d1 == d2 {
            return Err(Error::InvalidContext(format!(
                "direction needs d1 != d2, got ({d1},{d2})"
            )));
        }
        Ok(Direction { d1, d2 })
    }

    #[inline]
    pub fn pair(&self, k1: i64, k2: i64) -> i64 {
        self.d1 * k1 + self.d2 * k2
    }
}

impl Default for Direction {
    fn default() -> Self {
        Direction { d1: 3, d2: 2 }
    }
}

/// Inclusive exponent bounds. Bounds for `q` and `y` are numerators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Windows {
    pub p: (i32, i32),
    pub q: (i32, i32),
    pub y: (i32, i32),
    pub t1: (i32, i32),
    pub t2: (i32, i32),
}

impl Windows {
    #[inline]
    pub fn contains(&self, e: &Exponent) -> bool {
        let inside = |v: i32, (lo, hi): (i32, i32)| lo <= v && v <= hi;
        inside(e.q, self.q)
            && inside(e.p, self.p)
            && inside(e.t1, self.t1)
            && inside(e.t2, self.t2)
            && inside(e.y, self.y)
    }
}

/// Filtration used for provably complete truncation.
///
/// The grade of `e` is `d1·t1 + d2·t2 + q_slope·q + p_slope·p` (y does not
/// count). When every factor entering a product is built from monomials of
/// grade at least 1 (or pure powers of y), dropping everything above `cap`
/// commutes with multiplication, so the retained terms are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grading {
    pub q_slope: i64,
    pub p_slope: i64,
    pub cap: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeriesContext {
    pub dq: u32,
    pub dy: u32,
    pub windows: Windows,
    pub direction: Direction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Grading>,
}

impl SeriesContext {
    /// Plain box-truncated context with integer q and half-integer y.
    pub fn standard(qmax: i32, pmax: i32, tmin: i32, tmax: i32, direction: Direction) -> Self {
        SeriesContext {
            dq: 1,
            dy: 2,
            windows: Windows {
                p: (0, pmax),
                q: (0, qmax),
                y: (-64, 64),
                t1: (tmin, tmax),
                t2: (tmin, tmax),
            },
            direction,
            grading: None,
        }
    }

    /// Graded context whose boxes are wide enough never to cut a term of
    /// grade at most `grading.cap`, given that every atom has |t_i| at most
    /// `atom_t` and the total y-numerator stays within `y_bound`.
    pub fn graded(
        dq: u32,
        dy: u32,
        direction: Direction,
        grading: Grading,
        atom_t: i32,
        y_bound: i32,
        pmax: i32,
    ) -> Self {
        let cap = grading.cap.max(0);
        let t = (atom_t as i64 * cap).min(i32::MAX as i64 / 4) as i32;
        // an atom with q-numerator n has grade >= q_slope·n - |δ|, and at
        // least 1, so n <= grade·(1 + |δ|max)/q_slope; same for p
        let tilt = 1 + (direction.d1 + direction.d2) * atom_t as i64;
        let bound = |slope: i64| ((cap * tilt + slope - 1) / slope).min(i32::MAX as i64 / 4) as i32;
        let qmax = bound(grading.q_slope);
        let pmax = pmax.min(bound(grading.p_slope));
        SeriesContext {
            dq,
            dy,
            windows: Windows {
                p: (0, pmax),
                q: (0, qmax),
                y: (-y_bound, y_bound),
                t1: (-t, t),
                t2: (-t, t),
            },
            direction,
            grading: Some(grading),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dq == 0 || self.dy == 0 {
            return Err(Error::InvalidContext("denominators must be positive".into()));
        }
        Direction::new(self.direction.d1, self.direction.d2)?;
        let w = &self.windows;
        for (name, (lo, hi)) in [("p", w.p), ("q", w.q), ("y", w.y), ("t1", w.t1), ("t2", w.t2)] {
            if lo > 0 || hi < 0 {
                return Err(Error::InvalidContext(format!(
                    "window for {name} must contain 0, got [{lo},{hi}]"
                )));
            }
        }
        if let Some(g) = &self.grading {
            if g.q_slope < 1 || g.p_slope < 1 {
                return Err(Error::InvalidContext("grading slopes must be positive".into()));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn delta(&self, e: &Exponent) -> i64 {
        self.direction.pair(e.t1 as i64, e.t2 as i64)
    }

    /// Filtration degree; zero when no grading is configured.
    #[inline]
    pub fn grade(&self, e: &Exponent) -> i64 {
        match &self.grading {
            Some(g) => self.delta(e) + g.q_slope * e.q as i64 + g.p_slope * e.p as i64,
            None => 0,
        }
    }

    #[inline]
    pub fn keeps(&self, e: &Exponent) -> bool {
        self.windows.contains(e)
            && match &self.grading {
                Some(g) => self.grade(e) <= g.cap,
                None => true,
            }
    }

    /// Direction-policy sign: positive when the monomial is "small".
    pub fn smallness(&self, e: &Exponent) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match e.p.cmp(&0) {
            Equal => {}
            o => return o,
        }
        match e.q.cmp(&0) {
            Equal => {}
            o => return o,
        }
        self.delta(e).cmp(&0)
    }

    pub fn with_windows(&self, windows: Windows) -> Self {
        SeriesContext {
            windows,
            ..self.clone()
        }
    }

    pub fn fmt_monomial(&self, e: &Exponent) -> String {
        MonomialDisplay { ctx: self, e }.to_string()
    }
}

struct MonomialDisplay<'a> {
    ctx: &'a SeriesContext,
    e: &'a Exponent,
}

fn frac(n: i32, d: u32) -> String {
    let g = num_integer::gcd(n.unsigned_abs(), d);
    let (n, d) = (n / g as i32, d / g);
    if d == 1 {
        n.to_string()
    } else {
        format!("({n}/{d})")
    }
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.e;
        let mut parts = Vec::new();
        if e.p != 0 {
            parts.push(format!("p^{}", e.p));
        }
        if e.q != 0 {
            parts.push(format!("q^{}", frac(e.q, self.ctx.dq)));
        }
        if e.y != 0 {
            parts.push(format!("y^{}", frac(e.y, self.ctx.dy)));
        }
        if e.t1 != 0 {
            parts.push(format!("t1^{}", e.t1));
        }
        if e.t2 != 0 {
            parts.push(format!("t2^{}", e.t2));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}
