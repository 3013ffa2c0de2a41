use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Num, One, Signed};

use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::scalar::Real;

/// Sparse bivariate polynomial; key `(i, j)` holds the coefficient of
/// `x^i y^j`. Zero coefficients are never stored.
///
/// Variables are named `p` and `q` when printed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C> Default for BiPoly<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<C: Clone + Num> BiPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(c: C, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// The first variable, `p`.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    /// The second variable, `q`.
    pub fn y() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(i, j)) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert((i, j), s);
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `i + j` over stored terms.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute polynomials for both variables.
    pub fn compose(&self, x: &Self, y: &Self) -> Self {
        let mut xp = vec![Self::one()];
        let mut yp = vec![Self::one()];
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            while xp.len() <= i as usize {
                let next = xp.last().unwrap() * x;
                xp.push(next);
            }
            while yp.len() <= j as usize {
                let next = yp.last().unwrap() * y;
                yp.push(next);
            }
            out = out + (&xp[i as usize] * &yp[j as usize]).scale(c);
        }
        out
    }

    /// Evaluation in any ring the coefficients map into.
    pub fn eval_with<R, F>(&self, x: &R, y: &R, mut lift: F) -> R
    where
        R: Clone + Num,
        F: FnMut(&C) -> R,
    {
        let mut xp = vec![R::one()];
        let mut yp = vec![R::one()];
        let mut acc = R::zero();
        for (&(i, j), c) in &self.terms {
            while xp.len() <= i as usize {
                let next = xp.last().unwrap().clone() * x.clone();
                xp.push(next);
            }
            while yp.len() <= j as usize {
                let next = yp.last().unwrap().clone() * y.clone();
                yp.push(next);
            }
            acc = acc + lift(c) * xp[i as usize].clone() * yp[j as usize].clone();
        }
        acc
    }

    pub fn eval(&self, x: &C, y: &C) -> C {
        self.eval_with(x, y, C::clone)
    }
}

impl<C: Clone + Num> Add for BiPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for ((i, j), c) in rhs.terms {
            self.add_term(i, j, c);
        }
        self
    }
}

impl<C: Clone + Num + Neg<Output = C>> Neg for BiPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl<C: Clone + Num + Neg<Output = C>> Sub for BiPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Clone + Num> Mul for &BiPoly<C> {
    type Output = BiPoly<C>;
    fn mul(self, rhs: Self) -> BiPoly<C> {
        let mut out = BiPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<C: Clone + Num> Mul for BiPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

/// `sum c_ij p^i q^j` at complex `(p, q)`.
///
/// Fails with [`Error::Range`] if a coefficient overflows `T`.
pub fn eval_bipoly<T: Real>(poly: &BiPoly<Rational>, p: Complex<T>, q: Complex<T>) -> Result<Complex<T>> {
    let mut out = Complex::new(T::zero(), T::zero());
    let mut pp = vec![Complex::new(T::one(), T::zero())];
    let mut qp = vec![Complex::new(T::one(), T::zero())];
    for (&(i, j), c) in poly.terms() {
        let c = T::from_rational(c)
            .ok_or_else(|| Error::Range(format!("coefficient {c} overflows {}", T::NAME)))?;
        while pp.len() <= i as usize {
            let next = *pp.last().unwrap() * p;
            pp.push(next);
        }
        while qp.len() <= j as usize {
            let next = *qp.last().unwrap() * q;
            qp.push(next);
        }
        out += pp[i as usize] * qp[j as usize] * c;
    }
    Ok(out)
}

impl fmt::Display for BiPoly<Rational> {
    /// Terms by weighted degree `i + 2j` (q counts twice), highest first,
    /// then by the power of `p`; e.g. `1/2*p^2 - q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + 2 * b.1, b.0).cmp(&(a.0 + 2 * a.1, a.0)));
        for (n, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let mut vars = Vec::new();
            for (name, e) in [("p", key.0), ("q", key.1)] {
                match e {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{name}^{e}")),
                }
            }
            let mag = c.abs();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
