//! Gamma-function numerics and the closed forms and limits built on them.

pub mod gamma;
pub mod limits;

pub use gamma::{digamma, ln_gamma, ln_gamma_ratio, near_pole};
pub use limits::{constant, constants, delta, r_closed, r_inf, ser_partial, w_closed, w_inf};
