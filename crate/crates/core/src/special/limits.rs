//! Closed forms of `W_n(p,q)` and `R_n(p,q)`, their limits, and related
//! constants.
//!
//! With `Delta = sqrt(p^2 - 4q)`, `a, b = (p +- Delta)/2` for `W` and
//! `(p +- Delta)/4` for `R`, every formula is symmetric in `a` and `b`, so the
//! branch of the square root never matters.

use num_complex::Complex;
use num_traits::Zero;

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::exact::rational::binomial_q;
use crate::products::ProductResult;
use crate::scalar::{ComplexExt, ComplexSum, CompensatedSum, Real};
use crate::special::gamma::{digamma, ln_gamma, ln_gamma_ratio, near_pole};

fn cr<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// `Delta = sqrt(p^2 - 4q)`, principal branch.
pub fn delta<T: Real>(p: Complex<T>, q: Complex<T>) -> Complex<T> {
    (p * p - q * T::of(4.0)).sqrt_principal()
}

/// `(a, b)` for the `W` family.
pub fn w_roots<T: Real>(p: Complex<T>, q: Complex<T>) -> (Complex<T>, Complex<T>) {
    let d = delta(p, q);
    let h = T::of(0.5);
    ((p + d) * h, (p - d) * h)
}

/// `(a, b)` for the `R` family.
pub fn r_roots<T: Real>(p: Complex<T>, q: Complex<T>) -> (Complex<T>, Complex<T>) {
    let d = delta(p, q);
    let f = T::of(0.25);
    ((p + d) * f, (p - d) * f)
}

/// `W_inf(p,q) = e^{-p gamma} / (Gamma(1+a) Gamma(1+b))`.
///
/// Returns exact zero when `1+a` or `1+b` is a pole of `Gamma`: the product
/// then has a vanishing factor.
pub fn w_inf<T: Real>(p: Complex<T>, q: Complex<T>) -> Result<Complex<T>> {
    let (a, b) = w_roots(p, q);
    let one = cr(T::one());
    if near_pole(one + a).is_some() || near_pole(one + b).is_some() {
        return Ok(Complex::zero());
    }
    let log = -p * T::euler_gamma() - ln_gamma(one + a)? - ln_gamma(one + b)?;
    Ok(log.exp_c())
}

/// `R_inf(p,q) = 2^{-p} pi e^{-p gamma / 2} / (Gamma(1/2+a) Gamma(1/2+b))`,
/// zero at a pole as for [`w_inf`].
pub fn r_inf<T: Real>(p: Complex<T>, q: Complex<T>) -> Result<Complex<T>> {
    let (a, b) = r_roots(p, q);
    let half = cr(T::of(0.5));
    if near_pole(half + a).is_some() || near_pole(half + b).is_some() {
        return Ok(Complex::zero());
    }
    let log = -p * T::ln_2() + cr(T::pi().ln()) - p * (T::euler_gamma() * T::of(0.5))
        - ln_gamma(half + a)?
        - ln_gamma(half + b)?;
    Ok(log.exp_c())
}

enum Pochhammer<T> {
    Log(Complex<T>),
    ZeroAt(u64),
}

/// `ln[(z0 + a)_n / (z0)_n]`, or the index of the vanishing factor.
fn ln_pochhammer_ratio<T: Real>(z0: T, a: Complex<T>, n: u64) -> Result<Pochhammer<T>> {
    let s = cr(z0) + a;
    if let Some(m) = near_pole(s) {
        let j = (1 - m) as u64;
        if n >= j {
            return Ok(Pochhammer::ZeroAt(j));
        }
        // fewer than j factors, all finite and nonzero
        let mut acc = ComplexSum::new();
        for k in 0..n {
            let kt = T::from_u64(k).expect("index fits");
            acc.add((s + kt).ln_principal() - cr(z0 + kt).ln_principal());
        }
        return Ok(Pochhammer::Log(acc.value()));
    }
    let nt = T::from_u64(n).expect("index fits");
    Ok(Pochhammer::Log(ln_gamma_ratio(cr(z0 + nt), a)? - ln_gamma_ratio(cr(z0), a)?))
}

/// `exp(-lambda [psi(z0+n) - psi(z0)]) (z0+a)_n (z0+b)_n / (z0)_n^2`.
fn closed_form<T: Real>(
    n: u64,
    z0: T,
    psi_z0: T,
    lambda: Complex<T>,
    a: Complex<T>,
    b: Complex<T>,
) -> Result<ProductResult<T>> {
    if n == 0 {
        return Err(Error::InvalidInput("product length must be at least 1".into()));
    }
    let la = ln_pochhammer_ratio(z0, a, n)?;
    let lb = ln_pochhammer_ratio(z0, b, n)?;
    let (la, lb) = match (la, lb) {
        (Pochhammer::ZeroAt(i), Pochhammer::ZeroAt(j)) => return Ok(ProductResult::zero(i.min(j), n)),
        (Pochhammer::ZeroAt(j), _) | (_, Pochhammer::ZeroAt(j)) => return Ok(ProductResult::zero(j, n)),
        (Pochhammer::Log(x), Pochhammer::Log(y)) => (x, y),
    };
    let nt = T::from_u64(n).expect("index fits");
    let psi = digamma(cr(z0 + nt))? - cr(psi_z0);
    Ok(ProductResult::from_log(-lambda * psi + la + lb, n))
}

/// `W_n(p,q)` from the gamma/digamma closed form.
pub fn w_closed<T: Real>(n: u64, p: Complex<T>, q: Complex<T>) -> Result<ProductResult<T>> {
    let (a, b) = w_roots(p, q);
    closed_form(n, T::one(), -T::euler_gamma(), p, a, b)
}

/// `R_n(p,q)` from the gamma/digamma closed form.
pub fn r_closed<T: Real>(n: u64, p: Complex<T>, q: Complex<T>) -> Result<ProductResult<T>> {
    let (a, b) = r_roots(p, q);
    let psi_half = -T::euler_gamma() - T::ln_2() * T::of(2.0);
    closed_form(n, T::of(0.5), psi_half, p * T::of(0.5), a, b)
}

/// Product of the first `count` factors of
/// `e^gamma = prod_{n>=1} (prod_{k=0}^{n} (k+1)^{(-1)^{k+1} C(n,k)})^{1/(n+1)}`.
///
/// The alternating binomial sums cancel heavily, so the logarithms are
/// accumulated in double-double whatever `T` is; about 32 minus
/// `log10(C(n, n/2))` digits of each factor survive.
pub fn ser_partial<T: Real>(count: u64) -> Result<T> {
    if count == 0 {
        return Err(Error::InvalidInput("need at least one factor".into()));
    }
    let mut total = CompensatedSum::<DoubleDouble>::new();
    for n in 1..=count {
        let mut s = CompensatedSum::<DoubleDouble>::new();
        for k in 0..=n {
            let c = DoubleDouble::from_rational(&binomial_q(n, k))
                .ok_or_else(|| Error::Range(format!("C({n},{k}) overflows")))?;
            let t = c * <DoubleDouble as Real>::of_int(k as i64 + 1).ln();
            s.add(if k % 2 == 1 { t } else { -t });
        }
        total.add(s.value() / <DoubleDouble as Real>::of_int(n as i64 + 1));
    }
    T::from_rational(&total.value().exp().to_rational().expect("finite"))
        .ok_or_else(|| Error::Range("partial product overflows".into()))
}

/// Named constants appearing as limits of the products.
pub fn constants<T: Real>() -> Vec<(&'static str, T)> {
    let g = T::euler_gamma();
    let pi = T::pi();
    let eg = g.exp();
    let half_pi = pi * T::of(0.5);
    let wilf = (half_pi.exp() + (-half_pi).exp()) / (pi * eg);
    vec![
        ("euler_gamma", g),
        ("exp_euler_gamma", eg),
        ("pi", pi),
        ("half_pi", half_pi),
        ("two_over_pi", T::of(2.0) / pi),
        ("wilf", wilf),
        ("exp_gamma_over_pi", eg / pi),
        ("minus_two_exp_gamma", -T::of(2.0) * eg),
        ("half_exp_minus_gamma", T::one() / (T::of(2.0) * eg)),
    ]
}

/// Looks up one entry of [`constants`].
pub fn constant<T: Real>(name: &str) -> Option<T> {
    constants::<T>().into_iter().find(|(n, _)| *n == name).map(|(_, v)| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{r_product, w_product};

    type C = Complex<f64>;
    const G: f64 = 0.577_215_664_901_532_9;
    const PI: f64 = std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn delta_branch() {
        assert_eq!(delta(c(0.0, 0.0), c(-0.25, 0.0)), c(1.0, 0.0));
        assert!(rel(delta(c(1.0, 0.0), c(0.5, 0.0)), c(0.0, 1.0)) < 1e-16);
        assert_eq!(delta(c(-1.0, 0.0), c(0.25, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn classical_limits() {
        assert!(rel(w_inf(c(0.0, 0.0), c(-0.25, 0.0)).unwrap(), c(2.0 / PI, 0.0)) < 1e-13);
        let wilf = ((PI / 2.0).exp() + (-PI / 2.0).exp()) / (PI * G.exp());
        assert!(rel(w_inf(c(1.0, 0.0), c(0.5, 0.0)).unwrap(), c(wilf, 0.0)) < 1e-13);
        assert!(rel(w_inf(c(-1.0, 0.0), c(0.25, 0.0)).unwrap(), c(G.exp() / PI, 0.0)) < 1e-13);
        assert!(rel(r_inf(c(-2.0, 0.0), c(0.0, 0.0)).unwrap(), c(-2.0 * G.exp(), 0.0)) < 1e-13);
        assert!(rel(r_inf(c(2.0, 0.0), c(0.0, 0.0)).unwrap(), c(0.5 / G.exp(), 0.0)) < 1e-13);
        assert!(rel(r_inf(c(0.0, 0.0), c(0.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
    }

    #[test]
    fn weierstrass_recovery() {
        for p in [0.5, 1.5, 2.5] {
            let g = crate::special::gamma::ln_gamma(c(p + 1.0, 0.0)).unwrap().re.exp();
            let v = w_inf(c(p, 0.0), c(0.0, 0.0)).unwrap() * g * (p * G).exp();
            assert!(rel(v, c(1.0, 0.0)) < 1e-12);
        }
    }

    #[test]
    fn pole_parameters_give_zero() {
        // p = -2, q = 1: a = b = -1, so 1 + a = 0
        assert_eq!(w_inf(c(-2.0, 0.0), c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        let w = w_closed(3, c(-2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(w.zero_factor_at, Some(1));
        // q = 6, p = -5: factors vanish at j = 2 and 3
        let w = w_closed(5, c(-5.0, 0.0), c(6.0, 0.0)).unwrap();
        assert_eq!(w.zero_factor_at, Some(2));
        let w = w_closed(1, c(-5.0, 0.0), c(6.0, 0.0)).unwrap();
        let direct = w_product(1, c(-5.0, 0.0), c(6.0, 0.0)).unwrap();
        assert!(rel(w.value, direct.value) < 1e-13);
    }

    #[test]
    fn closed_forms_match_products() {
        let cases = [
            (5, c(0.0, 0.0), c(-0.25, 0.0)),
            (100, c(1.0, 0.0), c(0.5, 0.0)),
            (50, c(-2.0, 0.0), c(0.0, 0.0)),
            (100, c(2.0, 0.0), c(0.0, 0.0)),
            (300, c(1.0, 1.0), c(0.5, -1.0)),
        ];
        for (n, p, q) in cases {
            let (w, direct) = (w_closed(n, p, q).unwrap(), w_product(n, p, q).unwrap());
            if direct.is_zero() {
                assert_eq!(w.zero_factor_at, direct.zero_factor_at);
            } else {
                assert!(rel(w.value, direct.value) < 1e-12, "W n={n} p={p}");
            }
            let r = r_closed(n, p, q).unwrap().value;
            assert!(rel(r, r_product(n, p, q).unwrap().value) < 1e-12, "R n={n} p={p}");
        }
        assert_eq!(w_closed(10, c(0.0, 0.0), c(0.0, 0.0)).unwrap().value, c(1.0, 0.0));
        assert!(r_closed(50, c(-2.0, 0.0), c(0.0, 0.0)).unwrap().value.re < 0.0);
    }

    #[test]
    fn closed_form_at_a_million_terms() {
        let n = 1_000_000;
        let (p, q) = (c(1.0, 0.0), c(0.5, 0.0));
        let dd: ProductResult<DoubleDouble> =
            w_product(n, crate::scalar::widen(p), crate::scalar::widen(q)).unwrap();
        let w = w_closed(n, p, q).unwrap().value;
        assert!(rel(w, dd.value.to_c64()) < 1e-11);
    }

    #[test]
    fn ser_factors() {
        let s1: f64 = ser_partial(1).unwrap();
        assert!((s1 - 2f64.sqrt()).abs() < 1e-15);
        let s2: f64 = ser_partial(2).unwrap();
        assert!((s2 - 2f64.sqrt() * (4.0f64 / 3.0).powf(1.0 / 3.0)).abs() < 1e-15);
        let f3 = (32.0f64 / 27.0).powf(0.25);
        let f4 = (16.0f64.powi(1) * 4f64.powi(4) / (729.0 * 5.0)).powf(0.2);
        let s4: f64 = ser_partial(4).unwrap();
        assert!((s4 - s2 * f3 * f4).abs() < 1e-14);
        let eg = G.exp();
        let mut prev = 0.0;
        for n in 1..=12 {
            let s: f64 = ser_partial(n).unwrap();
            assert!(s > prev && s < eg);
            prev = s;
        }
        assert!((eg - prev).abs() < (eg - s4).abs());
    }

    #[test]
    fn constant_table() {
        let eg: DoubleDouble = constant("exp_euler_gamma").unwrap();
        assert!(eg.to_sig_string(20).starts_with("1.7810724179"));
        assert!(constant::<f64>("nope").is_none());
    }
}
