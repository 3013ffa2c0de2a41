//! Asymptotic-expansion coefficients: the bivariate families `a_j`, `b_j`
//! and the rational Wallis series.

pub mod bipoly;
pub mod generic;
pub mod series;
pub mod wallis;

pub use bipoly::{eval_bipoly, BiPoly};
pub use generic::{a_poly, b_poly, delta_expansion, generic_a, spec_poly_branch, spec_polys, GenericParams, Specialization};
pub use series::{CoeffSeries, Family, SeriesValues};
pub use wallis::{alpha_beta, exp_compose, nu_closed, nu_raw, omega, omega_alt, wallis_mu, wallis_nu};
