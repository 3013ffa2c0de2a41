//! Decimal rendering of scalars for plain, CSV and JSON output.

use num_complex::Complex;

use crate::exact::rational::to_sig_string;
use crate::scalar::Real;

/// `x` at `digits` significant digits; `inf`, `-inf`, `NaN` for non-finite.
pub fn fmt_real<T: Real>(x: T, digits: usize) -> String {
    match x.to_rational() {
        Some(r) if x.is_finite() => to_sig_string(&r, digits),
        _ => {
            let f = x.to_f64_lossy();
            if f.is_nan() {
                "NaN".into()
            } else if f > 0.0 {
                "inf".into()
            } else {
                "-inf".into()
            }
        }
    }
}

/// `a+bi` / `a-bi` form.
pub fn fmt_complex<T: Real>(z: Complex<T>, digits: usize) -> String {
    let im = fmt_real(z.im, digits);
    if im.starts_with('-') {
        format!("{}{}i", fmt_real(z.re, digits), im)
    } else {
        format!("{}+{}i", fmt_real(z.re, digits), im)
    }
}

/// JSON number, or `null` for non-finite values.
pub fn json_real<T: Real>(x: T, digits: usize) -> String {
    if x.is_finite() {
        fmt_real(x, digits)
    } else {
        "null".into()
    }
}

/// `{"re":x,"im":y}`.
pub fn json_complex<T: Real>(z: Complex<T>, digits: usize) -> String {
    format!(r#"{{"re":{},"im":{}}}"#, json_real(z.re, digits), json_real(z.im, digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders() {
        assert_eq!(fmt_real(0.25f64, 17), "0.25");
        assert_eq!(fmt_real(f64::NEG_INFINITY, 17), "-inf");
        assert_eq!(json_real(f64::NAN, 17), "null");
        assert_eq!(fmt_complex(Complex::new(1.5, -2.0), 5), "1.5-2i");
        assert_eq!(json_complex(Complex::new(-0.0f64, 3.0), 5), r#"{"re":0,"im":3}"#);
    }
}
