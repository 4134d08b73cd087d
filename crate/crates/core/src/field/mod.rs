//! Exact coefficient arithmetic over Q and the cyclotomic fields Q(ζ_N).

mod cyclotomic;
mod element;
mod rational;

pub use cyclotomic::{
    cyclotomic_polynomial, order_cap, set_order_cap, CyclotomicElement, DEFAULT_ORDER_CAP,
};
pub use element::{embed_complex, FieldElement};
pub use rational::{factorial, lcm_u64, Rational};
