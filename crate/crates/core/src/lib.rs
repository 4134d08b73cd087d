//! Equivariant elliptic genera computed exactly by fixed-point localization.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`]: rationals and cyclotomic fields,
//! * [`series`]: truncated Laurent series in `p, q, y, t1, t2`,
//! * [`theta`]: q-expansions of theta-function ratios and numeric theta values,
//! * [`localization`]: fixed-point sums for Hilbert schemes, symmetric-product
//!   orbifolds and A_{k-1} resolutions,
//! * [`fan`]: cones, star subdivisions and piecewise polynomials,
//! * [`identities`]: drivers comparing both sides of the product formula and
//!   the McKay correspondence coefficient by coefficient.

pub mod error;
pub mod fan;
pub mod field;
pub mod identities;
pub mod localization;
pub mod series;
pub mod theta;

pub use error::{Error, ErrorClass, Result};
pub use field::{FieldElement, Rational};
pub use series::{Direction, Exponent, Series, SeriesContext};
