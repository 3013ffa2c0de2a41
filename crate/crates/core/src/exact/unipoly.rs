use std::fmt;

use num_complex::Complex;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::scalar::Real;

/// Dense univariate polynomial; `coeffs[k]` multiplies `t^k`.
///
/// The highest stored coefficient is nonzero, so the zero polynomial has an
/// empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Clone + Zero> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation in any ring `R` the coefficients map into.
    pub fn eval_with<R, F>(&self, x: &R, mut lift: F) -> R
    where
        R: Clone + Num,
        F: FnMut(&C) -> R,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + lift(c))
    }
}

impl<C: Clone + Num> UniPoly<C> {
    pub fn eval(&self, x: &C) -> C {
        self.eval_with(x, C::clone)
    }
}

/// Exact value of `poly` at `x`.
pub fn eval_unipoly(poly: &UniPoly<Rational>, x: &Rational) -> Rational {
    poly.eval(x)
}

/// Horner evaluation at a complex point after rounding each coefficient.
///
/// Fails with [`Error::Range`] if a coefficient does not fit `T`.
pub fn eval_unipoly_complex<T: Real>(poly: &UniPoly<Rational>, z: Complex<T>) -> Result<Complex<T>> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for c in poly.coeffs().iter().rev() {
        let c = T::from_rational(c)
            .ok_or_else(|| Error::Range(format!("coefficient {c} overflows {}", T::NAME)))?;
        acc = acc * z + Complex::new(c, T::zero());
    }
    Ok(acc)
}

impl fmt::Display for UniPoly<Rational> {
    /// Highest power first, e.g. `t^2 - t + 1/6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            match (mag.is_one(), var.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => f.write_str(&var)?,
                (false, false) => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn trims_trailing_zeros() {
        let p = UniPoly::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(UniPoly::<Rational>::new(vec![int(0)]).is_zero());
        assert_eq!(UniPoly::<Rational>::zero().degree(), None);
    }

    #[test]
    fn exact_and_complex_evaluation() {
        // t^2 - t + 1/6
        let b2 = UniPoly::new(vec![rat(1, 6), int(-1), int(1)]);
        assert_eq!(eval_unipoly(&b2, &rat(1, 2)), rat(-1, 12));
        assert_eq!(eval_unipoly(&UniPoly::zero(), &rat(7, 3)), int(0));
        let z = eval_unipoly_complex::<f64>(&b2, Complex::new(0.0, 0.0)).unwrap();
        assert_eq!(z, Complex::new(1.0 / 6.0, 0.0));
        assert_eq!(b2.to_string(), "t^2 - t + 1/6");
    }

    #[test]
    fn overflowing_coefficient_is_a_range_error() {
        let huge = Rational::from_integer(num_bigint::BigInt::from(10).pow(400u32));
        let p = UniPoly::new(vec![huge]);
        let err = eval_unipoly_complex::<f64>(&p, Complex::new(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::Range(_)));
    }
}
