//! Exact coefficients and numerical evaluation for the generalized Wallis
//! products `W_n(p,q)`, `R_n(p,q)` and the Wallis sequence.
//!
//! Exact work (Bernoulli data, coefficient families) uses big rationals.
//! Numerics are generic over [`Real`], implemented for `f32`, `f64` and
//! [`DoubleDouble`]; the aliases below fix the common instantiations.

pub mod coeffs;
pub mod dd;
pub mod error;
pub mod exact;
pub mod expansion;
pub mod products;
pub mod report;
pub mod scalar;
pub mod special;
pub mod verify;

pub use dd::DoubleDouble;
pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type ComplexDD = num_complex::Complex<DoubleDouble>;
pub type RationalBiPoly = coeffs::BiPoly<exact::Rational>;
pub type ProductResult64 = products::ProductResult<f64>;
pub type ProductResultDD = products::ProductResult<DoubleDouble>;
pub type ExpansionFamily64 = expansion::ExpansionFamily<f64>;
pub type ExpansionFamilyDD = expansion::ExpansionFamily<DoubleDouble>;
pub type ErrorReport64 = expansion::ErrorReport<f64>;
pub type ErrorReportDD = expansion::ErrorReport<DoubleDouble>;
