//! Exact rational helpers on top of `num_rational::BigRational`.
//!
//! Rationals are always kept in lowest terms with a positive denominator by
//! `BigRational` itself; this module adds parsing, binomials and the textual
//! forms used on the wire (`"num/den"`, or `"n"` for integers).

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Integer = BigInt;

/// Shorthand for `n/d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` as a rational, for use inside coefficient recurrences.
pub fn binomial_q(n: u64, k: u64) -> Rational {
    Rational::from_integer(BigInt::from(binomial(n, k)))
}

/// `2^e` for any signed exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Canonical text form: `"-691/2730"`, or `"7"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"n"`, `"n/d"`, or a decimal literal such as `"-0.25"` or `"1.5e-3"`.
///
/// Decimal literals are converted exactly (`"0.1"` is `1/10`, not the nearest
/// binary double).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid number {s:?}"));
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i64 - 1;
    let p = Rational::from_integer(BigInt::from(10)).pow(scale.unsigned_abs() as u32);
    let digits = Rational::from_integer(digits);
    let r = if scale >= 0 { digits * p } else { digits / p };
    Ok(if neg { -r } else { r })
}

/// Exact rational value of a finite double.
pub fn f64_to_rational(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Decimal rendering with `digits` significant digits (round half away from
/// zero), trailing fractional zeros removed. Fixed notation is used for
/// decimal exponents in `-5..21`, scientific notation otherwise.
pub fn to_sig_string(r: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Estimate the decimal exponent from bit lengths, then correct.
    let bits = a.numer().bits() as i64 - a.denom().bits() as i64;
    let mut e = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let scale = |e: i64| -> Rational {
        let p = ten.clone().pow(e.unsigned_abs() as u32);
        if e >= 0 {
            p
        } else {
            p.recip()
        }
    };
    loop {
        let s = &a / scale(e);
        if s >= ten {
            e += 1;
        } else if s < Rational::one() {
            e -= 1;
        } else {
            break;
        }
    }
    let shifted = &a / scale(e - digits as i64 + 1);
    let mut m = round_half_away(&shifted);
    let limit = BigInt::from(10).pow(digits as u32);
    if m >= limit {
        m /= 10;
        e += 1;
    }
    let mut ds = m.to_string();
    debug_assert_eq!(ds.len(), digits);
    let sign = if neg { "-" } else { "" };
    if (-5..21).contains(&e) {
        let out = if e >= 0 {
            let e = e as usize;
            if ds.len() <= e + 1 {
                ds.push_str(&"0".repeat(e + 1 - ds.len()));
                ds
            } else {
                let (i, f) = ds.split_at(e + 1);
                format!("{i}.{}", f.trim_end_matches('0'))
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), ds.trim_end_matches('0'))
        };
        format!("{sign}{}", out.trim_end_matches('.'))
    } else {
        let (i, f) = ds.split_at(1);
        let f = f.trim_end_matches('0');
        if f.is_empty() {
            format!("{sign}{i}e{e}")
        } else {
            format!("{sign}{i}.{f}e{e}")
        }
    }
}

fn round_half_away(x: &Rational) -> BigInt {
    let (q, r) = x.numer().div_rem(x.denom());
    let twice = r.abs() * 2u32;
    if twice >= *x.denom() {
        if x.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// `f64` decimal rendering with `digits` significant digits.
pub fn f64_to_sig_string(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    f64_to_rational(x)
        .map(|r| to_sig_string(&r, digits))
        .unwrap_or_else(|| x.to_string())
}

/// Nearest `f64`, `None` when the value overflows.
pub fn rational_to_f64(r: &Rational) -> Option<f64> {
    r.to_f64().filter(|x| x.is_finite())
}

/// `true` when `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Sign of `r` as -1, 0 or 1.
pub fn sign(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Serde adapter writing a rational as its canonical string.
pub mod serde_str {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}
