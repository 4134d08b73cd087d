//! Coefficient-by-coefficient verification of the product formula, the
//! symmetric-product orbifold identity and the McKay correspondence for
//! cyclic quotients, with JSON reports.
//!
//! Every comparison happens inside a [`VerificationWindow`] on which both
//! sides are provably complete: contexts are graded with slopes chosen so
//! that each expansion atom has positive grade, and the grade cap is the
//! largest grade occurring in the window.

mod dmvv;
mod mckay;
mod plan;
mod report;

pub use self::dmvv::{dmvv_lhs, dmvv_rhs, dmvv_rhs_from_table, verify_dmvv, DmvvPlan, Fault};
pub use self::mckay::{verify_mckay_ak, verify_orb_hilb};
pub use self::plan::{
    ak_specs, graded_context, hilb_specs, required_q_slope, sym_denominator, twisted_specs, window_context, EllTarget,
    VerificationWindow,
};
pub use self::report::{
    compare_series, CoefficientEntry, CoefficientTable, Mismatch, VerificationReport, MISMATCH_LIST_LIMIT,
    REPORT_SCHEMA_VERSION,
};
