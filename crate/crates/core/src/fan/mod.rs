//! Simplicial cones, star subdivisions, piecewise polynomials and the
//! localization pushforward between them.
//!
//! Polynomials live in the ambient coordinates `x1..xn` of the lattice; a
//! cone's dual forms are linear polynomials in those coordinates.

mod cone;
mod io;
mod polynomial;
mod pushforward;
mod subdivision;
mod suite;
mod theta_identity;

pub use self::cone::{determinant, invert_matrix, is_primitive, Cone};
pub use self::io::{ConeEntry, FanFile, FAN_SCHEMA_VERSION};
pub use self::polynomial::Polynomial;
pub use self::pushforward::{pushforward, pushforward_at};
pub use self::subdivision::{pullback, star_subdivide, PiecewisePolynomial, SubCone, Subdivision};
pub use self::suite::{random_piecewise, random_polynomial, toric_suite, ToricSuiteConfig, ToricSuiteReport};
pub use self::theta_identity::{theta_identity_check, ThetaIdentityConfig, ThetaIdentityReport};
