//! Exact coefficient series for the classical Wallis ratio
//! `W_n = prod_{k<=n} 4k^2/(4k^2 - 1)`.

use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::coeffs::series::{CoeffSeries, Family};
use crate::error::{Error, Result};
use crate::exact::bernoulli::{bernoulli_number, bernoulli_poly};
use crate::exact::rational::{binomial_q, int, pow2, rat, Rational};
use crate::exact::unipoly::eval_unipoly;

fn q(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn alt_sign(j: usize) -> Rational {
    if j % 2 == 1 {
        int(1)
    } else {
        int(-1)
    }
}

/// `nu_j = (-1)^{j+1} ((4 - 2^{1-j}) B_{j+1} - (j+1) 2^{-j}) / (j(j+1))`.
pub fn nu_closed(j: usize) -> Rational {
    assert!(j >= 1, "coefficient index starts at 1");
    let jj = j as i64;
    let b = bernoulli_number(j + 1);
    let inner = (int(4) - pow2(1 - jj)) * b - q(j + 1) * pow2(-jj);
    alt_sign(j) * inner / (q(j) * q(j + 1))
}

/// `nu_j = (-1)^{j+1} (2 B_{j+1} - B_{j+1}(1/2) - B_{j+1}(3/2)) / (j(j+1))`,
/// the unreduced form.
pub fn nu_raw(j: usize) -> Rational {
    assert!(j >= 1, "coefficient index starts at 1");
    let bp = bernoulli_poly(j + 1);
    let inner = int(2) * bernoulli_number(j + 1) - eval_unipoly(&bp, &rat(1, 2)) - eval_unipoly(&bp, &rat(3, 2));
    alt_sign(j) * inner / (q(j) * q(j + 1))
}

/// Coefficients `b_1..=b_order` of `exp(sum_k a_k x^{-k})`:
/// `b_0 = 1`, `b_n = (1/n) sum_{k=1}^{n} k a_k b_{n-k}`.
pub fn exp_compose(a: &[Rational], order: usize) -> Result<Vec<Rational>> {
    if a.len() < order {
        return Err(Error::InvalidInput(format!(
            "need {order} input coefficients, got {}",
            a.len()
        )));
    }
    let mut b = vec![Rational::one()];
    extend_exp(a, &mut b, order);
    Ok(b.split_off(1))
}

/// Grows `b` (which starts with `b_0 = 1`) up to index `order`.
fn extend_exp(a: &[Rational], b: &mut Vec<Rational>, order: usize) {
    while b.len() <= order {
        let n = b.len();
        let s: Rational = (1..=n).map(|k| q(k) * &a[k - 1] * &b[n - k]).sum();
        b.push(s / q(n));
    }
}

#[derive(Default)]
struct Caches {
    nu: Vec<Rational>,
    // mu_0 = 1 first
    mu: Vec<Rational>,
    alpha_beta: Vec<(Rational, Rational)>,
    omega: Vec<Rational>,
}

impl Caches {
    fn grow_nu(&mut self, n: usize) {
        while self.nu.len() < n {
            let j = self.nu.len() + 1;
            self.nu.push(nu_closed(j));
        }
    }

    fn grow_mu(&mut self, n: usize) {
        if self.mu.is_empty() {
            self.mu.push(Rational::one());
        }
        self.grow_nu(n);
        extend_exp(&self.nu, &mut self.mu, n);
    }

    fn grow_alpha_beta(&mut self, n: usize) -> Result<()> {
        self.grow_mu(2 * n);
        while self.alpha_beta.len() < n {
            let l = self.alpha_beta.len() + 1;
            let pair = alpha_beta_step(&self.mu, &self.alpha_beta, l)?;
            self.alpha_beta.push(pair);
        }
        Ok(())
    }

    fn grow_omega(&mut self, n: usize) {
        self.grow_nu(2 * n);
        while self.omega.len() < n {
            let l = self.omega.len() + 1;
            let w = omega_step(&self.nu, &self.omega, l);
            self.omega.push(w);
        }
    }
}

fn caches() -> &'static RwLock<Caches> {
    static C: OnceLock<RwLock<Caches>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(Caches::default()))
}

fn cached<R>(ready: impl Fn(&Caches) -> bool, grow: impl FnOnce(&mut Caches) -> Result<()>, read: impl Fn(&Caches) -> R) -> Result<R> {
    {
        let c = caches().read().unwrap_or_else(|e| e.into_inner());
        if ready(&c) {
            return Ok(read(&c));
        }
    }
    let mut c = caches().write().unwrap_or_else(|e| e.into_inner());
    grow(&mut c)?;
    Ok(read(&c))
}

/// `alpha_l`, `beta_l` from `mu` (with `mu[0] = 1`) and the earlier pairs.
fn alpha_beta_step(mu: &[Rational], prev: &[(Rational, Rational)], l: usize) -> Result<(Rational, Rational)> {
    let mut alpha = mu[2 * l - 1].clone();
    let mut rest = mu[2 * l].clone();
    for (k, (ak, bk)) in prev.iter().enumerate().map(|(i, v)| (i + 1, v)) {
        let e = 2 * (l - k);
        alpha -= ak * num_traits::pow(bk.clone(), e) * binomial_q((2 * l - 2) as u64, e as u64);
        rest += ak * num_traits::pow(bk.clone(), e + 1) * binomial_q((2 * l - 1) as u64, (e + 1) as u64);
    }
    if alpha.is_zero() {
        return Err(Error::DegenerateAlpha { level: l });
    }
    let beta = -rest / (q(2 * l - 1) * &alpha);
    Ok((alpha, beta))
}

fn omega_step(nu: &[Rational], prev: &[Rational], l: usize) -> Rational {
    let half = rat(1, 2);
    let mut w = nu[2 * l - 2].clone();
    for (k, wk) in prev.iter().enumerate().map(|(i, v)| (i + 1, v)) {
        let e = 2 * (l - k);
        w -= wk * num_traits::pow(half.clone(), e) * binomial_q((2 * l - 2) as u64, e as u64);
    }
    w
}

/// `nu_1..=nu_order`.
pub fn wallis_nu(order: usize) -> CoeffSeries {
    let v = cached(|c| c.nu.len() >= order, |c| Ok(c.grow_nu(order)), |c| c.nu[..order].to_vec())
        .expect("nu growth is infallible");
    CoeffSeries::single(Family::Nu, v)
}

/// `mu_1..=mu_order`, the coefficients of `exp(sum nu_j n^{-j})`.
pub fn wallis_mu(order: usize) -> CoeffSeries {
    let v = cached(
        |c| c.mu.len() > order,
        |c| Ok(c.grow_mu(order)),
        |c| c.mu[1..=order].to_vec(),
    )
    .expect("mu growth is infallible");
    CoeffSeries::single(Family::Mu, v)
}

/// `(alpha_l, beta_l)` for `l = 1..=order`.
///
/// Fails with [`Error::DegenerateAlpha`] if some `alpha_l` vanishes.
pub fn alpha_beta(order: usize) -> Result<CoeffSeries> {
    let v = cached(
        |c| c.alpha_beta.len() >= order,
        |c| c.grow_alpha_beta(order),
        |c| c.alpha_beta[..order].to_vec(),
    )?;
    Ok(CoeffSeries::pairs(v))
}

/// `omega_1..=omega_order` from the odd-index `nu` recurrence.
pub fn omega(order: usize) -> CoeffSeries {
    let v = cached(
        |c| c.omega.len() >= order,
        |c| Ok(c.grow_omega(order)),
        |c| c.omega[..order].to_vec(),
    )
    .expect("omega growth is infallible");
    CoeffSeries::single(Family::Omega, v)
}

/// `omega_1..=omega_order` from the even-index `nu` recurrence:
/// `omega_l = -(2/(2l-1)) (nu_{2l} + sum_k omega_k (1/2)^{2l-2k+1} C(2l-1, 2l-2k+1))`.
pub fn omega_alt(order: usize) -> CoeffSeries {
    let nu = wallis_nu(2 * order);
    let nu = nu.singles();
    let half = rat(1, 2);
    let mut w: Vec<Rational> = Vec::with_capacity(order);
    for l in 1..=order {
        let mut s = nu[2 * l - 1].clone();
        for (k, wk) in w.iter().enumerate().map(|(i, v)| (i + 1, v)) {
            let e = 2 * (l - k) + 1;
            s += wk * num_traits::pow(half.clone(), e) * binomial_q((2 * l - 1) as u64, e as u64);
        }
        w.push(-int(2) / q(2 * l - 1) * s);
    }
    CoeffSeries::single(Family::Omega, w)
}
