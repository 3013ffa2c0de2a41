//! The scalar abstraction every numeric routine is generic over.
//!
//! [`Real`] is implemented for `f32`, `f64` and [`DoubleDouble`]. Complex
//! values are `num_complex::Complex<T>`; the transcendental functions that
//! `num-complex` only offers for `num_traits::Float` types live on
//! [`ComplexExt`] so they also work for double-double.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{FromPrimitive, Num, NumAssign, ToPrimitive};

use crate::dd::DoubleDouble;
use crate::exact::rational::{f64_to_rational, Rational};

/// Euler–Mascheroni constant to 40 significant digits.
pub const EULER_GAMMA_STR: &str = "0.5772156649015328606065120900824024310422";

/// Real scalar field with the elementary functions the crate needs.
pub trait Real:
    Num
    + NumAssign
    + Neg<Output = Self>
    + Copy
    + PartialOrd
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// Short name used in reports ("f32", "f64", "dd").
    const NAME: &'static str;
    /// Decimal digits carried, roughly `-log10(unit_roundoff)`.
    const DIGITS: u32;

    /// Half the distance from 1 to the next representable value.
    fn unit_roundoff() -> Self;
    /// Nearest representable value, `None` when `r` overflows.
    fn from_rational(r: &Rational) -> Option<Self>;
    /// Exact rational value of a finite scalar.
    fn to_rational(self) -> Option<Rational>;
    fn pi() -> Self;
    fn ln_2() -> Self;
    fn infinity() -> Self;
    fn neg_infinity() -> Self;
    fn nan() -> Self;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn atan2(self, x: Self) -> Self;
    fn floor(self) -> Self;
    fn round(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn is_finite(self) -> bool;

    /// Lossy conversion from a double literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn of_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer literal")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Euler–Mascheroni constant rounded to this precision.
    fn euler_gamma() -> Self {
        EULER_GAMMA_STR.parse().ok().expect("valid literal")
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

macro_rules! impl_real_prim {
    ($t:ident, $name:expr, $digits:expr) => {
        impl Real for $t {
            const NAME: &'static str = $name;
            const DIGITS: u32 = $digits;

            fn unit_roundoff() -> Self {
                $t::EPSILON / 2.0
            }
            fn from_rational(r: &Rational) -> Option<Self> {
                let v = r.to_f64()? as $t;
                v.is_finite().then_some(v)
            }
            fn to_rational(self) -> Option<Rational> {
                f64_to_rational(self as f64)
            }
            fn pi() -> Self {
                std::$t::consts::PI
            }
            fn ln_2() -> Self {
                std::$t::consts::LN_2
            }
            fn infinity() -> Self {
                $t::INFINITY
            }
            fn neg_infinity() -> Self {
                $t::NEG_INFINITY
            }
            fn nan() -> Self {
                $t::NAN
            }
            fn abs(self) -> Self {
                $t::abs(self)
            }
            fn sqrt(self) -> Self {
                $t::sqrt(self)
            }
            fn exp(self) -> Self {
                $t::exp(self)
            }
            fn ln(self) -> Self {
                $t::ln(self)
            }
            fn ln_1p(self) -> Self {
                $t::ln_1p(self)
            }
            fn sin(self) -> Self {
                $t::sin(self)
            }
            fn cos(self) -> Self {
                $t::cos(self)
            }
            fn atan2(self, x: Self) -> Self {
                $t::atan2(self, x)
            }
            fn floor(self) -> Self {
                $t::floor(self)
            }
            fn round(self) -> Self {
                $t::round(self)
            }
            fn powi(self, n: i32) -> Self {
                $t::powi(self, n)
            }
            fn is_finite(self) -> bool {
                $t::is_finite(self)
            }
        }
    };
}

impl_real_prim!(f32, "f32", 7);
impl_real_prim!(f64, "f64", 16);

impl Real for DoubleDouble {
    const NAME: &'static str = "dd";
    const DIGITS: u32 = 31;

    fn unit_roundoff() -> Self {
        DoubleDouble::EPSILON
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        DoubleDouble::from_rational(r)
    }
    fn to_rational(self) -> Option<Rational> {
        DoubleDouble::to_rational(self)
    }
    fn pi() -> Self {
        DoubleDouble::pi()
    }
    fn ln_2() -> Self {
        DoubleDouble::ln_2()
    }
    fn infinity() -> Self {
        DoubleDouble::INFINITY
    }
    fn neg_infinity() -> Self {
        DoubleDouble::NEG_INFINITY
    }
    fn nan() -> Self {
        DoubleDouble::NAN
    }
    fn abs(self) -> Self {
        DoubleDouble::abs(self)
    }
    fn sqrt(self) -> Self {
        DoubleDouble::sqrt(self)
    }
    fn exp(self) -> Self {
        DoubleDouble::exp(self)
    }
    fn ln(self) -> Self {
        DoubleDouble::ln(self)
    }
    fn ln_1p(self) -> Self {
        DoubleDouble::ln_1p(self)
    }
    fn sin(self) -> Self {
        DoubleDouble::sin(self)
    }
    fn cos(self) -> Self {
        DoubleDouble::cos(self)
    }
    fn atan2(self, x: Self) -> Self {
        DoubleDouble::atan2(self, x)
    }
    fn floor(self) -> Self {
        DoubleDouble::floor(self)
    }
    fn round(self) -> Self {
        DoubleDouble::round(self)
    }
    fn powi(self, n: i32) -> Self {
        DoubleDouble::powi(self, n)
    }
    fn is_finite(self) -> bool {
        DoubleDouble::is_finite(self)
    }
}

/// Complex elementary functions over any [`Real`].
///
/// Logarithms and square roots use the principal branch (cut along the
/// negative real axis).
pub trait ComplexExt<T: Real>: Sized {
    fn real(x: T) -> Self;
    fn modulus(&self) -> T;
    fn arg_principal(&self) -> T;
    fn ln_principal(&self) -> Self;
    /// `ln(1 + self)` without cancellation for small `self`.
    fn ln_1p_principal(&self) -> Self;
    fn exp_c(&self) -> Self;
    fn sqrt_principal(&self) -> Self;
    fn powi_c(&self, n: i32) -> Self;
    fn is_finite_c(&self) -> bool;
    fn to_c64(&self) -> Complex<f64>;
}

impl<T: Real> ComplexExt<T> for Complex<T> {
    fn real(x: T) -> Self {
        Complex::new(x, T::zero())
    }

    fn modulus(&self) -> T {
        let (a, b) = (self.re.abs(), self.im.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return T::zero();
        }
        let r = small / big;
        big * (T::one() + r * r).sqrt()
    }

    fn arg_principal(&self) -> T {
        self.im.atan2(self.re)
    }

    fn ln_principal(&self) -> Self {
        Complex::new(self.modulus().ln(), self.arg_principal())
    }

    fn ln_1p_principal(&self) -> Self {
        let two = T::of(2.0);
        let re = (two * self.re + self.re * self.re + self.im * self.im).ln_1p() / two;
        Complex::new(re, self.im.atan2(T::one() + self.re))
    }

    fn exp_c(&self) -> Self {
        let m = self.re.exp();
        if self.im.is_zero() {
            return Complex::new(m, T::zero());
        }
        Complex::new(m * self.im.cos(), m * self.im.sin())
    }

    fn sqrt_principal(&self) -> Self {
        let (x, y) = (self.re, self.im);
        if x.is_zero() && y.is_zero() {
            return Complex::new(T::zero(), T::zero());
        }
        let r = self.modulus();
        let two = T::of(2.0);
        if x >= T::zero() {
            let t = ((r + x) / two).sqrt();
            Complex::new(t, y / (two * t))
        } else {
            let t = ((r - x) / two).sqrt();
            let im = if y >= T::zero() { t } else { -t };
            Complex::new(y.abs() / (two * t), im)
        }
    }

    fn powi_c(&self, n: i32) -> Self {
        let mut base = if n < 0 {
            Complex::new(T::one(), T::zero()) / *self
        } else {
            *self
        };
        let mut e = n.unsigned_abs();
        let mut acc = Complex::new(T::one(), T::zero());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn is_finite_c(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn to_c64(&self) -> Complex<f64> {
        Complex::new(self.re.to_f64_lossy(), self.im.to_f64_lossy())
    }
}

/// Converts an `f64` complex into another precision.
pub fn widen<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::of(z.re), T::of(z.im))
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<T: Real> {
    sum: T,
    comp: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self { sum: T::zero(), comp: T::zero() }
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

/// Compensated sum of complex terms (real and imaginary parts separately).
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexSum<T: Real> {
    re: CompensatedSum<T>,
    im: CompensatedSum<T>,
}

impl<T: Real> ComplexSum<T> {
    pub fn new() -> Self {
        Self { re: CompensatedSum::new(), im: CompensatedSum::new() }
    }

    pub fn add(&mut self, z: Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn principal_sqrt_branch() {
        let i = C::new(-1.0, 0.0).sqrt_principal();
        assert_eq!(i, C::new(0.0, 1.0));
        let neg0 = C::new(-4.0, -0.0).sqrt_principal();
        assert_eq!(neg0, C::new(0.0, 2.0));
        let below = C::new(-4.0, -1e-300).sqrt_principal();
        assert!(below.im < 0.0);
        let z = C::new(3.0, -4.0);
        let r = z.sqrt_principal();
        assert!((r * r - z).norm() < 1e-15);
        assert!(r.re >= 0.0);
    }

    #[test]
    fn complex_log_exp_agree_with_num_complex() {
        for z in [C::new(0.3, 2.0), C::new(-1.5, 0.25), C::new(1e-3, -7.0)] {
            assert!((z.ln_principal() - z.ln()).norm() < 1e-15);
            assert!((z.exp_c() - z.exp()).norm() < 1e-14 * z.exp().norm());
            let w = C::new(1e-9, 3e-10);
            let series = w - w * w / 2.0 + w * w * w / 3.0;
            assert!((w.ln_1p_principal() - series).norm() < 1e-24);
        }
    }

    #[test]
    fn double_double_complex_log() {
        let z = Complex::new(DoubleDouble::from(0.0), DoubleDouble::from(1.0));
        let l = z.ln_principal();
        let half_pi = DoubleDouble::pi() / DoubleDouble::from(2.0);
        assert!((l.im - half_pi).abs().to_f64() < 1e-31);
        assert!(l.re.abs().to_f64() < 1e-31);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::<f64>::new();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-15).abs() < 1e-30);
    }

    #[test]
    fn euler_gamma_per_precision() {
        assert_eq!(f64::euler_gamma(), 0.5772156649015329);
        let g = DoubleDouble::euler_gamma();
        assert_eq!(g.hi(), 0.5772156649015329);
        assert_eq!(g.lo(), -4.942915152430645e-18);
    }
}
