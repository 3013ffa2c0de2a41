//! Randomized invariants.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use wallis_core::coeffs::{a_poly, b_poly, eval_bipoly, exp_compose, generic_a, BiPoly, GenericParams};
use wallis_core::exact::rational::{format_rational, rat, to_sig_string};
use wallis_core::exact::{bernoulli_poly, eval_unipoly, parse_rational, Rational};
use wallis_core::products::{principal_angle, r_product, w_product};
use wallis_core::scalar::ComplexExt;
use wallis_core::special::{delta, ln_gamma, r_closed, w_closed, w_inf};
use wallis_core::{DoubleDouble, Real};

type C = Complex<f64>;

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..200, 1i64..60).prop_map(|(n, d)| rat(n, d))
}

fn small_poly() -> impl Strategy<Value = BiPoly<Rational>> {
    prop::collection::vec(((0u32..4, 0u32..3), -9i64..10, 1i64..5), 0..6)
        .prop_map(|t| BiPoly::from_terms(t.into_iter().map(|(k, n, d)| (k, rat(n, d)))))
}

/// Complex parameters kept away from the gamma poles of the closed forms.
fn params() -> impl Strategy<Value = (C, C)> {
    (-2.0f64..3.0, -1.5f64..1.5, -2.0f64..2.0, -1.5f64..1.5).prop_filter_map("near a pole", |(a, b, c, d)| {
        let (p, q) = (C::new(a, b), C::new(c, d));
        let dl = delta(p, q);
        let far = |z: C| (z.re - z.re.round()).abs() > 0.05 || z.im.abs() > 0.05 || z.re > 0.5;
        let w_ok = far(C::new(1.0, 0.0) + (p + dl) * 0.5) && far(C::new(1.0, 0.0) + (p - dl) * 0.5);
        let r_ok = far(C::new(0.5, 0.0) + (p + dl) * 0.25) && far(C::new(0.5, 0.0) + (p - dl) * 0.25);
        (w_ok && r_ok).then_some((p, q))
    })
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bernoulli_reflection_and_shift(n in 0usize..=30, x in rational()) {
        let b = bernoulli_poly(n);
        let s = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
        prop_assert_eq!(eval_unipoly(&b, &(Rational::one() - &x)), &s * eval_unipoly(&b, &x));
        if n >= 1 {
            let shift = Rational::from_integer(n.into()) * num_traits::pow(x.clone(), n - 1);
            prop_assert_eq!(s * eval_unipoly(&b, &-x.clone()), eval_unipoly(&b, &x) + shift);
        }
    }

    #[test]
    fn bipoly_is_a_ring_and_eval_a_homomorphism(a in small_poly(), b in small_poly(), c in small_poly(),
                                                x in rational(), y in rational()) {
        prop_assert_eq!(&(a.clone() + b.clone()) * &c, (&a * &c) + (&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!((&a * &b).eval(&x, &y), a.eval(&x, &y) * b.eval(&x, &y));
        prop_assert_eq!(a.compose(&BiPoly::x(), &BiPoly::y()), a.clone());
    }

    #[test]
    fn generic_coefficients_match_exact_polynomials(pn in -24i64..24, dn in -24i64..24, j in 1usize..=10) {
        // rational p and Delta, so q = (p^2 - Delta^2)/4 is rational too
        let (p, d) = (pn as f64 / 8.0, dn as f64 / 8.0);
        let q = (p * p - d * d) / 4.0;
        let c = |x: f64| C::new(x, 0.0);
        let w = generic_a(j, &GenericParams::for_w(c(p), c(d))).unwrap();
        let we = eval_bipoly(&a_poly(j), c(p), c(q)).unwrap();
        prop_assert!((w - we).norm() <= 1e-12 * we.norm().max(1.0), "a_{j}: {w} vs {we}");
        let r = generic_a(j, &GenericParams::for_r(c(p), c(d))).unwrap();
        let re = eval_bipoly(&b_poly(j), c(p), c(q)).unwrap();
        prop_assert!((r - re).norm() <= 1e-12 * re.norm().max(1.0), "b_{j}: {r} vs {re}");
    }

    #[test]
    fn limit_is_branch_symmetric((p, q) in params()) {
        let g = f64::euler_gamma();
        let one = C::new(1.0, 0.0);
        let via = |d: C| (-p * g - ln_gamma(one + (p + d) * 0.5).unwrap() - ln_gamma(one + (p - d) * 0.5).unwrap()).exp_c();
        let d = delta(p, q);
        let w = w_inf(p, q).unwrap();
        prop_assert!(rel(via(d), w) <= 1e-12);
        prop_assert!(rel(via(-d), w) <= 1e-12);
    }

    #[test]
    fn closed_forms_match_products((p, q) in params(), n in 1u64..2000) {
        let (a, b) = (w_product(n, p, q).unwrap(), w_closed(n, p, q).unwrap());
        prop_assert!(rel(b.value, a.value) <= 1e-10, "W n={n}: {} vs {}", a.value, b.value);
        let (a, b) = (r_product(n, p, q).unwrap(), r_closed(n, p, q).unwrap());
        prop_assert!(rel(b.value, a.value) <= 1e-10, "R n={n}: {} vs {}", a.value, b.value);
    }

    #[test]
    fn products_extend_one_factor_at_a_time((p, q) in params(), n in 1u64..500) {
        let a = w_product(n, p, q).unwrap().value;
        let b = w_product(n + 1, p, q).unwrap().value;
        let m = (n + 1) as f64;
        let factor = (-p / m).exp_c() * (C::new(1.0, 0.0) + p / m + q / (m * m));
        prop_assert!(rel(a * factor, b) <= 1e-13);
    }

    #[test]
    fn ln_gamma_recurrence(re in -20.0f64..30.0, im in -10.0f64..10.0) {
        let z = C::new(re, im);
        prop_assume!((re - re.round()).abs() > 1e-3 || im.abs() > 1e-3);
        let diff = ln_gamma(z + 1.0).unwrap() - ln_gamma(z).unwrap() - z.ln_principal();
        let tau = 2.0 * std::f64::consts::PI;
        let k = (diff.im / tau).round();
        let scale = ln_gamma(z).unwrap().norm().max(1.0);
        prop_assert!(diff.re.abs() <= 1e-12 * scale);
        prop_assert!((diff.im - k * tau).abs() <= 1e-12 * scale);
    }

    #[test]
    fn complex_exp_inverts_log(re in -50.0f64..50.0, im in -50.0f64..50.0) {
        let z = C::new(re, im);
        prop_assume!(z.norm() > 1e-6);
        prop_assert!(rel(z.ln_principal().exp_c(), z) <= 1e-14);
        let s = z.sqrt_principal();
        prop_assert!(rel(s * s, z) <= 1e-14 && s.re >= 0.0);
    }

    #[test]
    fn principal_angle_range(t in -1e4f64..1e4) {
        let r = principal_angle(t);
        let pi = std::f64::consts::PI;
        prop_assert!(r > -pi && r <= pi);
        prop_assert!(((t - r) / (2.0 * pi) - ((t - r) / (2.0 * pi)).round()).abs() < 1e-9);
    }

    #[test]
    fn rational_text_round_trip(r in rational(), e in -8i32..8) {
        let r = r * num_traits::pow(rat(10, 1), e.unsigned_abs() as usize);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r.clone());
        // 40 significant digits of a rational with small denominator re-parse within 1e-39
        let back = parse_rational(&to_sig_string(&r, 40)).unwrap();
        if !r.is_zero() {
            let err = ((back - &r) / &r).abs();
            prop_assert!(err < rat(1, 1) / num_traits::pow(rat(10, 1), 39));
        }
    }

    #[test]
    fn double_double_tracks_exact_arithmetic(a in rational(), b in rational()) {
        let d = |r: &Rational| DoubleDouble::from_rational(r).unwrap();
        let close = |x: DoubleDouble, r: Rational| {
            let back = x.to_rational().unwrap();
            r.is_zero() && back.is_zero() || ((back - &r) / &r).abs() < rat(1, 1_000_000_000_000_000) * rat(1, 1_000_000_000_000_000)
        };
        prop_assert!(close(d(&a) + d(&b), &a + &b));
        prop_assert!(close(d(&a) * d(&b), &a * &b));
        if !b.is_zero() {
            prop_assert!(close(d(&a) / d(&b), &a / &b));
        }
    }

    #[test]
    fn exp_composition_matches_numeric_exponential(
        a in prop::collection::vec((-8i64..=8, 1i64..=4).prop_map(|(n, d)| rat(n, d)), 6),
        x in 50.0f64..400.0,
    ) {
        let b = exp_compose(&a, 6).unwrap();
        prop_assert_eq!(&b[0], &a[0]);
        let series = |c: &[Rational]| c.iter().enumerate()
            .map(|(k, v)| v.to_f64_lossy() * x.powi(-(k as i32 + 1))).sum::<f64>();
        let want = series(&a).exp();
        let got = 1.0 + series(&b);
        // with A = max |a_k| the series is majorized by A t/(1-t); the omitted tail is then
        // bounded by exp(A t/(1-t)) minus its degree-6 Taylor part, via k g_k = sum j m_j g_{k-j}
        let big = a.iter().map(|v| v.to_f64_lossy().abs()).fold(0.0, f64::max);
        let t = 1.0 / x;
        let mut g = vec![1.0f64];
        for k in 1..=6 {
            g.push((1..=k).map(|j| j as f64 * big * g[k - j]).sum::<f64>() / k as f64);
        }
        let head: f64 = g.iter().enumerate().map(|(k, c)| c * t.powi(k as i32)).sum();
        let tail = (big * t / (1.0 - t)).exp() - head;
        prop_assert!((got - want).abs() <= tail + 1e-13, "{got} vs {want}, tail {tail}");
    }
}

trait Lossy {
    fn to_f64_lossy(&self) -> f64;
}

impl Lossy for Rational {
    fn to_f64_lossy(&self) -> f64 {
        wallis_core::exact::rational::rational_to_f64(self).unwrap()
    }
}
