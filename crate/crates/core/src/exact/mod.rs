//! Exact rational arithmetic: Bernoulli data and polynomials.

pub mod bernoulli;
pub mod rational;
pub mod unipoly;

pub use bernoulli::{bernoulli_number, bernoulli_numbers, bernoulli_poly, BernoulliTable};
pub use rational::{binomial, parse_rational, Rational};
pub use unipoly::{eval_unipoly, eval_unipoly_complex, UniPoly};
