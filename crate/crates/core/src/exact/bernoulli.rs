//! Bernoulli numbers and polynomials in exact arithmetic.
//!
//! Convention: `B_n := B_n(0)`, so `B_1 = -1/2` (generating function
//! `z e^{tz} / (e^z - 1)` at `t = 0`). The other common convention flips the
//! sign of `B_1` only.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::rational::{binomial_q, Rational};
use crate::exact::unipoly::UniPoly;

/// Cache of `B_0..=B_n` and `B_0(t)..=B_n(t)`.
///
/// Growth is monotone: asking for order `n` fills every order `<= n`.
/// Numbers come from the Akiyama–Tanigawa transform, whose working row is
/// kept so later growth resumes where the last call stopped.
#[derive(Clone, Debug, Default)]
pub struct BernoulliTable {
    numbers: Vec<Rational>,
    polys: Vec<UniPoly<Rational>>,
    row: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Highest order currently cached, if any.
    pub fn order(&self) -> Option<usize> {
        self.numbers.len().checked_sub(1)
    }

    pub fn ensure(&mut self, n: usize) {
        while self.numbers.len() <= n {
            let m = self.numbers.len();
            self.row.push(Rational::new(BigInt::one(), BigInt::from(m + 1)));
            for j in (1..=m).rev() {
                let d = &self.row[j - 1] - &self.row[j];
                self.row[j - 1] = d * BigInt::from(j);
            }
            let mut b = self.row[0].clone();
            if m == 1 {
                // Akiyama–Tanigawa yields B_1 = +1/2.
                b = -b;
            }
            self.numbers.push(b);
        }
        while self.polys.len() <= n {
            let m = self.polys.len();
            let coeffs = (0..=m)
                .map(|k| binomial_q(m as u64, k as u64) * &self.numbers[m - k])
                .collect();
            self.polys.push(UniPoly::new(coeffs));
        }
    }

    pub fn number(&self, n: usize) -> Option<&Rational> {
        self.numbers.get(n)
    }

    pub fn poly(&self, n: usize) -> Option<&UniPoly<Rational>> {
        self.polys.get(n)
    }
}

fn table() -> &'static RwLock<BernoulliTable> {
    static TABLE: OnceLock<RwLock<BernoulliTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(BernoulliTable::new()))
}

/// Runs `f` against the shared table after growing it to order `n`.
pub fn with_table<R>(n: usize, f: impl FnOnce(&BernoulliTable) -> R) -> R {
    {
        let t = table().read().unwrap_or_else(|e| e.into_inner());
        if t.order().is_some_and(|o| o >= n) {
            return f(&t);
        }
    }
    let mut t = table().write().unwrap_or_else(|e| e.into_inner());
    t.ensure(n);
    f(&t)
}

/// Exact `B_n` with `B_1 = -1/2`.
pub fn bernoulli_number(n: usize) -> Rational {
    with_table(n, |t| t.numbers[n].clone())
}

/// `B_0, ..., B_n`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    with_table(n, |t| t.numbers[..=n].to_vec())
}

/// Coefficients of `B_n(t) = sum_k C(n,k) B_{n-k} t^k`.
pub fn bernoulli_poly(n: usize) -> UniPoly<Rational> {
    with_table(n, |t| t.polys[n].clone())
}

/// `true` if `B_n` vanishes (every odd `n >= 3`).
pub fn is_zero_bernoulli(n: usize) -> bool {
    bernoulli_number(n).is_zero()
}
