//! Direct evaluation of the finite products
//! `W_n(p,q) = prod_{j<=n} e^{-p/j} (1 + p/j + q/j^2)`,
//! `R_n(p,q) = prod_{j<=n} e^{-p/m} (1 + p/m + q/m^2)` with `m = 2j - 1`,
//! and the Wallis sequence, all accumulated in log space.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::report::{json_complex, json_real};
use crate::scalar::{ComplexExt, ComplexSum, CompensatedSum, Real};

/// `|factor|` at or below this is checked for an exact zero.
pub const ZERO_TOL: f64 = 1e-15;
/// `|factor|` below this is flagged as a precision hazard.
pub const NEAR_ZERO_TOL: f64 = 1e-8;

/// A finite product together with its logarithm.
///
/// `value = exp(log_abs) * e^{i phase}` unless `zero_factor_at` is set, in
/// which case `value` is exactly zero and `log_abs` is `-inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductResult<T> {
    pub value: Complex<T>,
    pub log_abs: T,
    /// Argument of `value`, in `(-pi, pi]`.
    pub phase: T,
    /// First index whose factor is exactly zero.
    pub zero_factor_at: Option<u64>,
    /// First index whose factor is tiny but nonzero.
    pub near_zero_at: Option<u64>,
    pub terms: u64,
}

/// Reduces an angle into `(-pi, pi]`.
pub fn principal_angle<T: Real>(t: T) -> T {
    let pi = T::pi();
    let tau = pi + pi;
    let mut r = t - tau * (t / tau).round();
    if r <= -pi {
        r += tau;
    } else if r > pi {
        r -= tau;
    }
    r
}

impl<T: Real> ProductResult<T> {
    pub fn from_log(log: Complex<T>, terms: u64) -> Self {
        let phase = principal_angle(log.im);
        // keep real products real
        let value = if phase.is_zero() {
            Complex::new(log.re.exp(), T::zero())
        } else if phase == T::pi() {
            Complex::new(-log.re.exp(), T::zero())
        } else {
            Complex::new(log.re, phase).exp_c()
        };
        Self { value, log_abs: log.re, phase, zero_factor_at: None, near_zero_at: None, terms }
    }

    pub fn zero(at: u64, terms: u64) -> Self {
        Self {
            value: Complex::new(T::zero(), T::zero()),
            log_abs: T::neg_infinity(),
            phase: T::zero(),
            zero_factor_at: Some(at),
            near_zero_at: None,
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero_factor_at.is_some()
    }

    /// JSON object with decimal numbers at `digits` significant digits.
    pub fn to_json(&self, digits: usize) -> String {
        let opt = |o: Option<u64>| o.map_or("null".to_string(), |v| v.to_string());
        format!(
            r#"{{"value":{},"log_abs":{},"phase":{},"zero_factor_at":{},"near_zero_at":{},"terms":{}}}"#,
            json_complex(self.value, digits),
            json_real(self.log_abs, digits),
            json_real(self.phase, digits),
            opt(self.zero_factor_at),
            opt(self.near_zero_at),
            self.terms
        )
    }
}

/// `m^2 + p m + q == 0` in exact arithmetic, for real `p`, `q`.
fn exact_root<T: Real>(m: u64, p: Complex<T>, q: Complex<T>) -> bool {
    if !p.im.is_zero() || !q.im.is_zero() {
        return false;
    }
    match (p.re.to_rational(), q.re.to_rational()) {
        (Some(p), Some(q)) => {
            let m = Rational::from_integer(m.into());
            (&m * &m + p * &m + q).is_zero()
        }
        _ => false,
    }
}

fn product<T: Real>(n: u64, p: Complex<T>, q: Complex<T>, denom: impl Fn(u64) -> u64) -> Result<ProductResult<T>> {
    if n == 0 {
        return Err(Error::InvalidInput("product length must be at least 1".into()));
    }
    let zero_tol = T::of(ZERO_TOL);
    let near_tol = T::of(NEAR_ZERO_TOL);
    let mut log = ComplexSum::new();
    let mut near = None;
    for j in 1..=n {
        let m = denom(j);
        let mt = T::from_u64(m).expect("index fits");
        let x = p / mt + q / (mt * mt);
        let factor = x + T::one();
        let size = factor.modulus();
        if size.is_zero() || (size <= zero_tol && exact_root(m, p, q)) {
            return Ok(ProductResult::zero(j, n));
        }
        if size < near_tol && near.is_none() {
            near = Some(j);
        }
        log.add(x.ln_1p_principal() - p / mt);
    }
    let mut r = ProductResult::from_log(log.value(), n);
    r.near_zero_at = near;
    Ok(r)
}

/// `W_n(p, q)` by direct multiplication, `n >= 1`.
pub fn w_product<T: Real>(n: u64, p: Complex<T>, q: Complex<T>) -> Result<ProductResult<T>> {
    product(n, p, q, |j| j)
}

/// `R_n(p, q)` by direct multiplication over odd denominators, `n >= 1`.
pub fn r_product<T: Real>(n: u64, p: Complex<T>, q: Complex<T>) -> Result<ProductResult<T>> {
    product(n, p, q, |j| 2 * j - 1)
}

/// `W_n = prod_{k<=n} 4k^2 / (4k^2 - 1)`.
pub fn wallis_seq<T: Real>(n: u64) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidInput("Wallis index must be at least 1".into()));
    }
    let mut s = CompensatedSum::new();
    for k in 1..=n {
        let d = T::from_u64(4 * k * k - 1).expect("index fits");
        s.add((T::one() / d).ln_1p());
    }
    Ok(s.value().exp())
}
