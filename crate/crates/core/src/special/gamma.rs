//! Complex log-gamma and digamma over any [`Real`].
//!
//! Both use the Stirling series after shifting the argument up to
//! `|z| >= R` with `R = DIGITS + 4`, where the series reaches full working
//! precision before it starts to diverge.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::exact::bernoulli::bernoulli_number;
use crate::scalar::{ComplexExt, ComplexSum, Real};

const MAX_TERMS: usize = 60;

/// Arguments closer than this to a nonpositive integer count as poles.
pub const POLE_TOL: f64 = 1e-12;

/// The nonpositive integer `m` with `|z - m| < POLE_TOL`, if any.
pub fn near_pole<T: Real>(z: Complex<T>) -> Option<i64> {
    let tol = T::of(POLE_TOL);
    if z.im.abs() >= tol || z.re > tol {
        return None;
    }
    let m = z.re.round();
    if (z.re - m).abs() < tol {
        m.to_i64()
    } else {
        None
    }
}

fn pole_error<T: Real>(what: &str, z: Complex<T>) -> Error {
    Error::Pole(format!("{what} at {} {:+}i", z.re, z.im))
}

fn shift_radius<T: Real>() -> T {
    T::of_int(T::DIGITS as i64 + 4)
}

fn cr<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Number of unit steps that move `z` into the Stirling region.
fn shift_count<T: Real>(z: Complex<T>) -> usize {
    let r = shift_radius::<T>();
    let half = r * T::of(0.5);
    let mut m = 0usize;
    let mut w = z;
    while w.re < half || w.modulus() < r {
        w.re += T::one();
        m += 1;
    }
    m
}

/// `B_{2k} / (2k (2k-1))` rounded into `T`.
fn stirling_coeff<T: Real>(k: usize) -> T {
    let b = bernoulli_number(2 * k);
    let d = (2 * k * (2 * k - 1)) as i64;
    T::from_rational(&b).expect("Bernoulli numbers fit") / T::of_int(d)
}

/// `sum_k c_k w^{1-2k}` until terms drop below working precision.
fn stirling_tail<T: Real>(w: Complex<T>) -> Complex<T> {
    let inv = Complex::new(T::one(), T::zero()) / w;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut acc = ComplexSum::new();
    let eps = T::unit_roundoff();
    for k in 1..=MAX_TERMS {
        let term = pow * stirling_coeff::<T>(k);
        acc.add(term);
        if term.modulus() <= eps * acc.value().modulus().max(eps) {
            break;
        }
        pow = pow * inv2;
    }
    acc.value()
}

fn half_ln_two_pi<T: Real>() -> T {
    (T::ln_2() + T::pi().ln()) * T::of(0.5)
}

/// Stirling value of `ln Gamma(w)` for `w` in the shifted region.
fn ln_gamma_stirling<T: Real>(w: Complex<T>) -> Complex<T> {
    (w - cr(T::of(0.5))) * w.ln_principal() - w + cr(half_ln_two_pi::<T>()) + stirling_tail(w)
}

/// Principal branch of `ln Gamma(z)`: real on the positive axis, cut along
/// the negative real axis.
///
/// Cost grows linearly with how far `z` lies left of the Stirling region.
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if near_pole(z).is_some() {
        return Err(pole_error("ln_gamma pole", z));
    }
    if !z.is_finite_c() {
        return Err(Error::InvalidInput("ln_gamma of a non-finite argument".into()));
    }
    let m = shift_count(z);
    let mut logs = ComplexSum::new();
    let mut w = z;
    for _ in 0..m {
        logs.add(w.ln_principal());
        w.re += T::one();
    }
    Ok(ln_gamma_stirling(w) - logs.value())
}

/// `psi(z) = Gamma'(z) / Gamma(z)`.
pub fn digamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if near_pole(z).is_some() {
        return Err(pole_error("digamma pole", z));
    }
    if !z.is_finite_c() {
        return Err(Error::InvalidInput("digamma of a non-finite argument".into()));
    }
    let m = shift_count(z);
    let one = cr(T::one());
    let mut recip = ComplexSum::new();
    let mut w = z;
    for _ in 0..m {
        recip.add(one / w);
        w.re += T::one();
    }
    Ok(digamma_asymptotic(w) - recip.value())
}

/// `ln w - 1/(2w) - sum_k B_{2k} / (2k w^{2k})`.
fn digamma_asymptotic<T: Real>(w: Complex<T>) -> Complex<T> {
    let inv = cr(T::one()) / w;
    let inv2 = inv * inv;
    let mut pow = inv2;
    let mut acc = ComplexSum::new();
    acc.add(w.ln_principal());
    acc.add(-inv * T::of(0.5));
    let eps = T::unit_roundoff();
    for k in 1..=MAX_TERMS {
        let b = T::from_rational(&bernoulli_number(2 * k)).expect("Bernoulli numbers fit");
        let term = pow * (b / T::of_int(2 * k as i64));
        acc.add(-term);
        if term.modulus() <= eps * acc.value().modulus().max(eps) {
            break;
        }
        pow = pow * inv2;
    }
    acc.value()
}

/// `ln Gamma(z + a) - ln Gamma(z)`, accurate when `|z|` is large and `a`
/// moderate (no cancellation between two large log-gammas).
///
/// Only the value modulo `2 pi i` is meaningful when the arguments leave the
/// right half-plane.
pub fn ln_gamma_ratio<T: Real>(z: Complex<T>, a: Complex<T>) -> Result<Complex<T>> {
    let r = shift_radius::<T>();
    let big = z.re >= r && (z + a).re >= r && a.modulus() * T::of(2.0) <= z.modulus();
    if !big {
        return Ok(ln_gamma(z + a)? - ln_gamma(z)?);
    }
    let za = z + a;
    let half = cr(T::of(0.5));
    let lead = (z - half) * (a / z).ln_1p_principal() + a * za.ln_principal() - a;
    Ok(lead + stirling_tail(za) - stirling_tail(z))
}
