//! Double-double arithmetic.
//!
//! A [`DoubleDouble`] is the unevaluated sum `hi + lo` of two doubles with
//! `|lo| <= ulp(hi) / 2`, which carries about 106 significant bits. The
//! error-free transformations follow Dekker and Knuth; the transcendental
//! functions are written for ~1e-31 relative accuracy on moderate arguments.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::exact::rational::{f64_to_rational, parse_rational, to_sig_string, Rational};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if !s.is_finite() {
        return (s, 0.0);
    }
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// ~106-bit floating point value stored as `hi + lo`.
#[derive(Clone, Copy, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

const PI: DoubleDouble = DoubleDouble::from_parts(3.141592653589793, 1.2246467991473532e-16);
const LN_2: DoubleDouble = DoubleDouble::from_parts(0.6931471805599453, 2.3190468138462996e-17);
const LN_2_TAIL: f64 = 5.707708438416212e-34;
const FRAC_PI_2: [f64; 3] = [1.5707963267948966, 6.123233995736766e-17, -1.4973849048591698e-33];
const EXP_SQUARINGS: i32 = 9;
const SERIES_CUTOFF: f64 = 1e-35;

impl DoubleDouble {
    pub const ZERO: Self = Self::from_parts(0.0, 0.0);
    pub const ONE: Self = Self::from_parts(1.0, 0.0);
    /// 2^-104, the spacing of representable values relative to 1.
    pub const EPSILON: Self = Self::from_parts(4.930380657631324e-32, 0.0);
    pub const NAN: Self = Self::from_parts(f64::NAN, f64::NAN);
    pub const INFINITY: Self = Self::from_parts(f64::INFINITY, 0.0);
    pub const NEG_INFINITY: Self = Self::from_parts(f64::NEG_INFINITY, 0.0);

    /// Builds a value from an already normalized pair.
    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    /// Exact sum of two doubles.
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    pub const fn hi(self) -> f64 {
        self.hi
    }

    pub const fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn is_nan(self) -> bool {
        self.hi.is_nan()
    }

    pub fn pi() -> Self {
        PI
    }

    pub fn ln_2() -> Self {
        LN_2
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }

    fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - Self::from(b).mul_f64(q1);
        let q2 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }
    }

    fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Self { hi: self.hi * s, lo: self.lo * s }
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (hi, lo) = quick_two_sum(hi, self.lo.floor());
            Self { hi, lo }
        } else {
            Self { hi, lo: 0.0 }
        }
    }

    pub fn round(self) -> Self {
        (self + Self::from(0.5)).floor()
    }

    pub fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            -(-self).floor()
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::ZERO } else { Self::NAN };
        }
        if !self.is_finite() {
            return self;
        }
        let y = self.hi.sqrt();
        let (p, e) = two_prod(y, y);
        let r = (self - Self { hi: p, lo: e }).hi;
        let (hi, lo) = quick_two_sum(y, r / (2.0 * y));
        Self { hi, lo }
    }

    /// `exp(x) - 1` for the reduced argument used by [`Self::exp`].
    fn expm1_small(r: Self) -> Self {
        let mut sum = r;
        let mut term = r;
        let mut k = 2.0;
        loop {
            term = (term * r).div_f64(k);
            sum += term;
            if term.hi == 0.0 || term.hi.abs() < SERIES_CUTOFF * sum.hi.abs() {
                break;
            }
            k += 1.0;
        }
        sum
    }

    pub fn exp(self) -> Self {
        if self.hi.is_nan() {
            return self;
        }
        if self.hi > 709.78 {
            return Self::INFINITY;
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        let k = (self.hi / LN_2.hi).round();
        let r = self - LN_2.mul_f64(k) - Self::from(LN_2_TAIL * k);
        let r = r.ldexp(-EXP_SQUARINGS);
        let mut s = Self::expm1_small(r);
        for _ in 0..EXP_SQUARINGS {
            // (1 + s)^2 - 1 = 2s + s^2
            s = s.mul_f64(2.0) + s * s;
        }
        (s + Self::ONE).ldexp(k as i32)
    }

    pub fn ln(self) -> Self {
        if self.hi.is_nan() || self.hi < 0.0 {
            return Self::NAN;
        }
        if self.hi == 0.0 {
            return Self::NEG_INFINITY;
        }
        if self.hi.is_infinite() {
            return self;
        }
        if self == Self::ONE {
            return Self::ZERO;
        }
        let mut y = Self::from(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Self::ONE;
        }
        y
    }

    /// `ln(1 + x)`, accurate for small `x`.
    pub fn ln_1p(self) -> Self {
        if self.hi.abs() >= 0.5 {
            return (Self::ONE + self).ln();
        }
        // ln(1 + x) = 2 atanh(x / (2 + x))
        let u = self / (Self::from(2.0) + self);
        let u2 = u * u;
        let mut sum = u;
        let mut pow = u;
        let mut k = 3.0;
        loop {
            pow *= u2;
            let term = pow.div_f64(k);
            sum += term;
            if term.hi.abs() <= SERIES_CUTOFF * sum.hi.abs() || term.hi == 0.0 {
                break;
            }
            k += 2.0;
        }
        sum.mul_f64(2.0)
    }

    /// Returns `(sin x, cos x)`.
    pub fn sin_cos(self) -> (Self, Self) {
        if !self.is_finite() {
            return (Self::NAN, Self::NAN);
        }
        let k = (self.hi / FRAC_PI_2[0]).round();
        let r = self
            - Self::from(FRAC_PI_2[0]).mul_f64(k)
            - Self::from(FRAC_PI_2[1]).mul_f64(k)
            - Self::from(FRAC_PI_2[2] * k);
        let r2 = r * r;
        let mut s = r;
        let mut c = Self::ONE;
        let mut ts = r;
        let mut tc = Self::ONE;
        let mut n = 1.0;
        loop {
            ts = -(ts * r2).div_f64((n + 1.0) * (n + 2.0));
            tc = -(tc * r2).div_f64(n * (n + 1.0));
            s += ts;
            c += tc;
            if ts.hi.abs().max(tc.hi.abs()) < SERIES_CUTOFF || n > 60.0 {
                break;
            }
            n += 2.0;
        }
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(self) -> Self {
        self.sin_cos().1
    }

    /// Four-quadrant arctangent of `self / x`.
    pub fn atan2(self, x: Self) -> Self {
        let y = self;
        if y.hi == 0.0 && x.hi == 0.0 {
            return Self::ZERO;
        }
        let mut t = Self::from(y.hi.atan2(x.hi));
        for _ in 0..2 {
            let (s, c) = t.sin_cos();
            let den = x * c + y * s;
            if den.hi == 0.0 {
                break;
            }
            t += (y * c - x * s) / den;
        }
        t
    }

    pub fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { Self::ONE / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Exact rational value, `None` for non-finite values.
    pub fn to_rational(self) -> Option<Rational> {
        Some(f64_to_rational(self.hi)? + f64_to_rational(self.lo)?)
    }

    /// Correctly normalized nearest double-double to `r`; `None` on overflow.
    pub fn from_rational(r: &Rational) -> Option<Self> {
        let hi = r.to_f64()?;
        if !hi.is_finite() {
            return None;
        }
        let rest = r - f64_to_rational(hi)?;
        let lo = rest.to_f64().unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        Some(Self { hi, lo })
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_sig_string(self, digits: usize) -> String {
        match self.to_rational() {
            Some(r) => to_sig_string(&r, digits),
            None => self.hi.to_string(),
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

impl From<i32> for DoubleDouble {
    fn from(x: i32) -> Self {
        Self { hi: x as f64, lo: 0.0 }
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return Self::from(s1);
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        if !p.is_finite() {
            return Self::from(p);
        }
        let (hi, lo) = quick_two_sum(p, e + (self.hi * b.lo + self.lo * b.hi));
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Self::from(q1);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self { hi: q1, lo: q2 } + Self::from(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - b * (self / b).trunc()
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DoubleDouble {
            fn $m(&mut self, b: Self) {
                *self = *self $op b;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /, RemAssign rem_assign %);

impl Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl Product for DoubleDouble {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::ONE
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = Error;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Error> {
        if radix != 10 {
            return Err(Error::Parse(format!("radix {radix} unsupported")));
        }
        s.parse()
    }
}

impl Signed for DoubleDouble {
    fn abs(&self) -> Self {
        DoubleDouble::abs(*self)
    }
    fn abs_sub(&self, other: &Self) -> Self {
        if *self <= *other {
            Self::ZERO
        } else {
            *self - *other
        }
    }
    fn signum(&self) -> Self {
        if self.hi > 0.0 {
            Self::ONE
        } else if self.hi < 0.0 {
            -Self::ONE
        } else {
            Self::ZERO
        }
    }
    fn is_positive(&self) -> bool {
        self.hi > 0.0
    }
    fn is_negative(&self) -> bool {
        self.hi < 0.0
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n - hi as i64) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Some(Self { hi, lo })
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Some(Self { hi, lo })
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Self::from(x))
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        let hi = t.hi.to_i64()?;
        Some(hi + t.lo as i64)
    }
    fn to_u64(&self) -> Option<u64> {
        self.to_i64().and_then(|v| u64::try_from(v).ok())
    }
    fn to_f64(&self) -> Option<f64> {
        Some(DoubleDouble::to_f64(*self))
    }
}

impl FromStr for DoubleDouble {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let r = parse_rational(s)?;
        Self::from_rational(&r).ok_or_else(|| Error::Range(format!("{s} overflows double-double")))
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(32);
        f.write_str(&self.to_sig_string(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values (40 digits) for the transcendental functions.
    const E: &str = "2.718281828459045235360287471352662497757";
    const SQRT_2: &str = "1.414213562373095048801688724209698078570";
    const LN_10: &str = "2.302585092994045684017991454684364207601";
    const SIN_1: &str = "0.8414709848078965066525023216302989996226";
    const COS_1: &str = "0.5403023058681397174009366074429766037323";

    fn dd(s: &str) -> DoubleDouble {
        s.parse().unwrap()
    }

    fn rel(a: DoubleDouble, b: DoubleDouble) -> f64 {
        ((a - b) / b).abs().to_f64()
    }

    #[test]
    fn arithmetic_is_double_double_exact() {
        let third = DoubleDouble::ONE / DoubleDouble::from(3.0);
        let back = third * DoubleDouble::from(3.0);
        assert!((back - DoubleDouble::ONE).abs().to_f64() < 1e-31);
        let x = DoubleDouble::from_sum(1.0, 1e-20);
        assert_eq!((x - DoubleDouble::ONE).to_f64(), 1e-20);
        assert!(rel(DoubleDouble::from(2.0).sqrt(), dd(SQRT_2)) < 1e-31);
    }

    #[test]
    fn exp_and_ln_are_accurate() {
        assert!(rel(DoubleDouble::ONE.exp(), dd(E)) < 1e-31);
        assert!(rel(DoubleDouble::from(10.0).ln(), dd(LN_10)) < 1e-31);
        for x in [-30.5, -3.3, -0.0123456789, 0.5, 1.75, 10.3, 200.0] {
            let v = DoubleDouble::from(x);
            assert!(rel(v.exp().ln(), v) < 1e-30, "x = {x}");
        }
        let small = DoubleDouble::from(1e-12);
        let l = small.ln_1p();
        // ln(1+x) = x - x^2/2 + x^3/3 - ...
        let series = small - small * small / DoubleDouble::from(2.0)
            + small * small * small / DoubleDouble::from(3.0);
        assert!(rel(l, series) < 1e-31);
    }

    #[test]
    fn exp_at_exact_zero_and_ln2_multiples() {
        assert_eq!(DoubleDouble::ZERO.exp(), DoubleDouble::ONE);
        assert_eq!((-DoubleDouble::ZERO).exp(), DoubleDouble::ONE);
        let two = DoubleDouble::ln_2().exp();
        assert!(rel(two, DoubleDouble::from(2.0)) < 1e-31);
    }

    #[test]
    fn trig_is_accurate() {
        let (s, c) = DoubleDouble::ONE.sin_cos();
        assert!(rel(s, dd(SIN_1)) < 1e-31);
        assert!(rel(c, dd(COS_1)) < 1e-31);
        for x in [-7.0, -2.0, 0.3, 3.0, 5.5, 40.0] {
            let (s, c) = DoubleDouble::from(x).sin_cos();
            assert!((s * s + c * c - DoubleDouble::ONE).abs().to_f64() < 1e-30, "x = {x}");
            let t = s.atan2(c);
            let wrapped = x - (2.0 * std::f64::consts::PI) * ((x + std::f64::consts::PI) / (2.0 * std::f64::consts::PI)).floor();
            assert!((t.to_f64() - wrapped).abs() < 1e-12, "x = {x}");
        }
        let quarter = DoubleDouble::ONE.atan2(DoubleDouble::ONE);
        assert!(rel(quarter * DoubleDouble::from(4.0), DoubleDouble::pi()) < 1e-31);
    }

    #[test]
    fn rational_round_trip() {
        let r = crate::exact::rational::rat(1, 3);
        let x = DoubleDouble::from_rational(&r).unwrap();
        let back = x.to_rational().unwrap();
        let err = ((back - &r) / &r).to_f64().unwrap().abs();
        assert!(err < 1e-32);
        assert_eq!(dd("0.5").to_sig_string(5), "0.5");
        assert_eq!(format!("{:.20}", DoubleDouble::ONE / DoubleDouble::from(3.0)), "0.33333333333333333333");
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(dd("2.5").floor(), DoubleDouble::from(2.0));
        assert_eq!(dd("-2.5").floor(), DoubleDouble::from(-3.0));
        assert_eq!(dd("-2.5").trunc(), DoubleDouble::from(-2.0));
        assert_eq!(dd("2.4").round(), DoubleDouble::from(2.0));
        assert_eq!(DoubleDouble::from(7.0) % DoubleDouble::from(3.0), DoubleDouble::ONE);
        assert_eq!(DoubleDouble::from(3.0).powi(-2) * DoubleDouble::from(9.0), DoubleDouble::ONE);
    }
}
