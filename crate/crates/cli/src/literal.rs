//! Complex literals such as `1`, `-0.5`, `1/2-3/4i`, `2i`, `-i`, `1.5e-3+i`.

use num_complex::Complex;
use wallis_core::exact::{parse_rational, Rational};
use wallis_core::{Error, Real, Result};

/// A complex number with exact rational parts, as typed.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexLiteral {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexLiteral {
    pub fn to_complex<T: Real>(&self) -> Result<Complex<T>> {
        let conv = |r: &Rational| T::from_rational(r).ok_or_else(|| Error::Range(format!("{r} overflows {}", T::NAME)));
        Ok(Complex::new(conv(&self.re)?, conv(&self.im)?))
    }
}

fn imaginary(part: &str, whole: &str) -> Result<Rational> {
    let coeff = part.strip_suffix('i').expect("caller checked the suffix").trim_end_matches('*');
    match coeff {
        "" | "+" => Ok(Rational::from_integer(1.into())),
        "-" => Ok(Rational::from_integer((-1).into())),
        c => parse_rational(c).map_err(|_| Error::Parse(format!("invalid complex literal {whole:?}"))),
    }
}

/// Index of the sign that separates the real and imaginary parts, if any.
fn split_point(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    (1..b.len()).rev().find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'))
}

pub fn parse_complex(input: &str) -> Result<ComplexLiteral> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let zero = Rational::from_integer(0.into());
    if !s.ends_with('i') {
        return Ok(ComplexLiteral { re: parse_rational(&s)?, im: zero });
    }
    match split_point(&s) {
        Some(k) => Ok(ComplexLiteral { re: parse_rational(&s[..k])?, im: imaginary(&s[k..], input)? }),
        None => Ok(ComplexLiteral { re: zero, im: imaginary(&s, input)? }),
    }
}
