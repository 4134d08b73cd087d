use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure classes, used by drivers to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Invalid input or configuration.
    Config,
    /// A configured size or order bound was exceeded.
    ResourceCap,
    /// An arithmetic or structural failure inside a computation.
    Math,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cyclotomic order {requested} exceeds the configured cap {cap}")]
    OrderCap { requested: u64, cap: u32 },

    #[error("series contexts differ")]
    ContextMismatch,

    #[error("invalid series context: {0}")]
    InvalidContext(String),

    #[error("leading term {0} is not invertible")]
    NotUnit(String),

    #[error("expansion direction is ambiguous for monomial {0} (zero p, q and direction pairing)")]
    AmbiguousDirection(String),

    #[error("atom {monomial} has grade {grade} < 1; raise the grading slopes")]
    GradingTooWeak { monomial: String, grade: i64 },

    #[error("log(1 - M) needs a positive p-exponent, got {0}")]
    NonPositiveP(String),

    #[error("exp needs every term to carry a positive p-exponent; found {0}")]
    ExpDomain(String),

    #[error("q-section needs integer q-exponents (D_q = 1), context has D_q = {0}")]
    FractionalQ(u32),

    #[error("exponent {value} is not representable over denominator {denominator} for {variable}")]
    Denominator {
        variable: &'static str,
        value: String,
        denominator: u32,
    },

    #[error("theta pole: {0}")]
    ThetaPole(String),

    #[error("tau must lie in the upper half plane, got Im tau = {0}")]
    TauNotInUpperHalfPlane(f64),

    #[error("pole near sample point: {0}")]
    PoleAtSample(String),

    #[error("weight ({k1},{k2}) pairs to zero with direction ({d1},{d2}) in {context}")]
    DegenerateWeight {
        k1: i64,
        k2: i64,
        d1: i64,
        d2: i64,
        context: String,
    },

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    SizeCap {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("pushforward is not polynomial: nonzero remainder after dividing by {0}")]
    NonPolynomial(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("table window too small: {0}")]
    TableWindow(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::OrderCap { .. } | Error::SizeCap { .. } => ErrorClass::ResourceCap,
            Error::InvalidContext(_)
            | Error::Parse(_)
            | Error::Json(_)
            | Error::TauNotInUpperHalfPlane(_)
            | Error::Denominator { .. }
            | Error::DegenerateWeight { .. }
            | Error::AmbiguousDirection(_)
            | Error::Geometry(_)
            | Error::Invariant(_) => ErrorClass::Config,
            _ => ErrorClass::Math,
        }
    }
}
