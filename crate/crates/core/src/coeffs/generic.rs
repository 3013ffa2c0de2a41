//! Coefficients `a_j(lambda, mu, nu)` of
//! `ln[Gamma(z+mu) Gamma(z+nu) / Gamma(z)^2] - lambda psi(z)`-type
//! expansions and their exact specializations in `(p, q)`.

use std::sync::{OnceLock, RwLock};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeffs::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::exact::bernoulli::{bernoulli_number, bernoulli_poly};
use crate::exact::rational::{binomial_q, int, rat, Rational};
use crate::exact::unipoly::eval_unipoly_complex;
use crate::scalar::Real;

/// Arbitrary complex `(lambda, mu, nu)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenericParams<T> {
    pub lambda: Complex<T>,
    pub mu: Complex<T>,
    pub nu: Complex<T>,
}

impl<T: Real> GenericParams<T> {
    pub fn new(lambda: Complex<T>, mu: Complex<T>, nu: Complex<T>) -> Self {
        Self { lambda, mu, nu }
    }

    /// `(p, p/2 + d/2, p/2 - d/2)`, the triple behind `W_n(p, q)`.
    pub fn for_w(p: Complex<T>, delta: Complex<T>) -> Self {
        let h = T::of(0.5);
        Self::new(p, (p + delta) * h, (p - delta) * h)
    }

    /// `(p/2, p/4 + d/4, p/4 - d/4)`, the triple behind `R_n(p, q)`.
    pub fn for_r(p: Complex<T>, delta: Complex<T>) -> Self {
        let h = T::of(0.5);
        let f = T::of(0.25);
        Self::new(p * h, (p + delta) * f, (p - delta) * f)
    }
}

/// `a_j(lambda, mu, nu)` for `j >= 1`.
pub fn generic_a<T: Real>(j: usize, params: &GenericParams<T>) -> Result<Complex<T>> {
    if j == 0 {
        return Err(Error::InvalidInput("coefficient index starts at 1".into()));
    }
    let bp = bernoulli_poly(j + 1);
    let two_b = T::from_rational(&(int(2) * bernoulli_number(j + 1)))
        .ok_or_else(|| Error::Range(format!("B_{} overflows {}", j + 1, T::NAME)))?;
    let s = eval_unipoly_complex(&bp, params.mu)? + eval_unipoly_complex(&bp, params.nu)?
        - Complex::new(two_b, T::zero());
    let jj = T::of_int(j as i64);
    if j == 1 {
        return Ok((params.lambda + s) * T::of(0.5));
    }
    let bj = T::from_rational(&bernoulli_number(j))
        .ok_or_else(|| Error::Range(format!("B_{j} overflows {}", T::NAME)))?;
    let sign = if j % 2 == 1 { T::one() } else { -T::one() };
    Ok(params.lambda * (bj / jj) + s * (sign / (jj * (jj + T::one()))))
}

/// Which product family a specialization belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Specialization {
    /// `W_n(p, q)`: `lambda = p`, `mu, nu = (p +- Delta)/2`.
    W,
    /// `R_n(p, q)`: `lambda = p/2`, `mu, nu = (p +- Delta)/4`.
    R,
}

impl Specialization {
    fn lambda_scale(self) -> Rational {
        match self {
            Self::W => int(1),
            Self::R => rat(1, 2),
        }
    }

    fn arg_scale(self) -> Rational {
        match self {
            Self::W => rat(1, 2),
            Self::R => rat(1, 4),
        }
    }
}

/// `B_n(s p + s D) + B_n(s p - s D) - 2 B_n` as a polynomial in `(p, D)`,
/// with `D` replaced by `-D` when `flip` is set.
pub fn delta_expansion(n: usize, spec: Specialization, flip: bool) -> BiPoly<Rational> {
    let s = spec.arg_scale();
    let bp = bernoulli_poly(n);
    let sigma = if flip { int(-1) } else { int(1) };
    let mut out = BiPoly::zero();
    let mut s_pow = int(1);
    for (k, c) in bp.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let ck = c * &s_pow;
            // (p + sD)^k + (p - sD)^k, s = +-1
            for m in 0..=k {
                let plus = num_traits::pow(sigma.clone(), m);
                let minus = num_traits::pow(-sigma.clone(), m);
                let c = &ck * binomial_q(k as u64, m as u64) * (plus + minus);
                out.add_term((k - m) as u32, m as u32, c);
            }
        }
        s_pow *= &s;
    }
    out.add_term(0, 0, int(-2) * bernoulli_number(n));
    out
}

/// Replace `D^2` by `p^2 - 4q`. Panics if an odd power of `D` survives.
fn substitute_delta(poly: &BiPoly<Rational>) -> BiPoly<Rational> {
    let d2 = &BiPoly::<Rational>::x() * &BiPoly::x() - BiPoly::y().scale(&int(4));
    let mut powers = vec![BiPoly::one()];
    let mut out = BiPoly::zero();
    for (&(i, m), c) in poly.terms() {
        assert!(m % 2 == 0, "odd power D^{m} survived the symmetric sum");
        let r = (m / 2) as usize;
        while powers.len() <= r {
            let next = powers.last().unwrap() * &d2;
            powers.push(next);
        }
        out = out + (&BiPoly::monomial(c.clone(), i, 0) * &powers[r]);
    }
    out
}

fn build(j: usize, spec: Specialization, flip: bool) -> BiPoly<Rational> {
    assert!(j >= 1, "coefficient index starts at 1");
    let s = substitute_delta(&delta_expansion(j + 1, spec, flip));
    let lambda = BiPoly::<Rational>::x().scale(&spec.lambda_scale());
    if j == 1 {
        return (lambda + s).scale(&rat(1, 2));
    }
    let jq = Rational::from_integer(j.into());
    let sign = if j % 2 == 1 { int(1) } else { int(-1) };
    lambda.scale(&(bernoulli_number(j) / &jq)) + s.scale(&(sign / (&jq * (&jq + Rational::one()))))
}

/// Exact `a_j(p, q)` (`W_n` family), `j >= 1`.
///
/// # Panics
/// If `j == 0`.
pub fn a_poly(j: usize) -> BiPoly<Rational> {
    build(j, Specialization::W, false)
}

/// Exact `b_j(p, q)` (`R_n` family), `j >= 1`.
///
/// # Panics
/// If `j == 0`.
pub fn b_poly(j: usize) -> BiPoly<Rational> {
    build(j, Specialization::R, false)
}

fn poly_cache(spec: Specialization) -> &'static RwLock<Vec<BiPoly<Rational>>> {
    static W: OnceLock<RwLock<Vec<BiPoly<Rational>>>> = OnceLock::new();
    static R: OnceLock<RwLock<Vec<BiPoly<Rational>>>> = OnceLock::new();
    let cell = match spec {
        Specialization::W => &W,
        Specialization::R => &R,
    };
    cell.get_or_init(|| RwLock::new(Vec::new()))
}

/// Memoized `[a_1, ..., a_order]` (or `b_j` for [`Specialization::R`]).
pub fn spec_polys(spec: Specialization, order: usize) -> Vec<BiPoly<Rational>> {
    let cache = poly_cache(spec);
    {
        let c = cache.read().unwrap_or_else(|e| e.into_inner());
        if c.len() >= order {
            return c[..order].to_vec();
        }
    }
    let mut c = cache.write().unwrap_or_else(|e| e.into_inner());
    while c.len() < order {
        let j = c.len() + 1;
        c.push(build(j, spec, false));
    }
    c[..order].to_vec()
}

/// `a_poly` / `b_poly` built from the other square-root branch.
pub fn spec_poly_branch(j: usize, spec: Specialization, flip: bool) -> BiPoly<Rational> {
    build(j, spec, flip)
}
