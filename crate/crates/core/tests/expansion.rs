use num_complex::Complex;
use num_traits::Zero;
use wallis_core::coeffs::{a_poly, b_poly};
use wallis_core::exact::rational::rat;
use wallis_core::expansion::*;
use wallis_core::products::{r_product, w_product, wallis_seq};
use wallis_core::{DoubleDouble, Error, Real};

type C = Complex<f64>;
type D = DoubleDouble;
const PI: f64 = std::f64::consts::PI;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn dc(x: f64) -> Complex<D> {
    Complex::new(D::of(x), D::zero())
}

#[test]
fn w_expansion_against_product() {
    let approx = eval_w_expansion(1000, c(1.0), c(0.5), 5).unwrap();
    let exact = w_product(1000, c(1.0), c(0.5)).unwrap().value;
    assert!(((approx - exact) / exact).norm() <= 1e-11);
}

#[test]
fn r_expansion_against_product() {
    let approx = eval_r_expansion(100, c(2.0), c(0.0), 3).unwrap();
    let exact = r_product(100, c(2.0), c(0.0)).unwrap().value;
    // log-scale gap of order |b_4| / 100^4
    assert!((approx / exact).ln().norm() < 1e-7);

    let approx = eval_r_expansion(50, c(-2.0), c(0.0), 4).unwrap();
    let exact = r_product(50, c(-2.0), c(0.0)).unwrap().value;
    assert!(approx.re < 0.0 && exact.re < 0.0);
    assert!(((approx - exact) / exact).norm() <= 1e-6);
}

#[test]
fn order_two_truncations_are_the_displayed_ones() {
    // first two log-coefficients of W and R, substituted at a sample point
    let (p, q) = (rat(3, 7), rat(-2, 5));
    let a1 = &p * &p / rat(2, 1) - &q;
    let a2 = -&p * &p * &p / rat(6, 1) + &p * &q / rat(2, 1) + &p * &p / rat(4, 1) - &q / rat(2, 1);
    assert_eq!(a_poly(1).eval(&p, &q), a1);
    assert_eq!(a_poly(2).eval(&p, &q), a2);
    let b1 = &p * &p / rat(8, 1) - &q / rat(4, 1);
    let b2 = -&p * &p * &p / rat(48, 1) + &p * &q / rat(16, 1) + &p * &p / rat(16, 1) - &q / rat(8, 1);
    assert_eq!(b_poly(1).eval(&p, &q), b1);
    assert_eq!(b_poly(2).eval(&p, &q), b2);

    let n = 40u64;
    let x = n as f64 + 1.0;
    let (pf, qf) = (3.0 / 7.0, -0.4);
    let a1f = pf * pf / 2.0 - qf;
    let a2f = -pf.powi(3) / 6.0 + pf * qf / 2.0 + pf * pf / 4.0 - qf / 2.0;
    let lim = wallis_core::special::w_inf(c(pf), c(qf)).unwrap();
    let want = lim * (a1f / x + a2f / (x * x)).exp();
    let got = eval_w_expansion(n, c(pf), c(qf), 2).unwrap();
    assert!(((got - want) / want).norm() < 1e-14);
}

#[test]
fn wallis_families_against_the_sequence() {
    let w10: f64 = wallis_seq(10).unwrap();
    assert!((eval_wallis_mu::<f64>(10, 11) - w10).abs() <= 1e-10);
    let w100: f64 = wallis_seq(100).unwrap();
    assert!((eval_wallis_nu_exp::<f64>(100, 11) - w100).abs() <= 1e-13);
    assert!((eval_wallis_omega::<f64>(100, 5) - w100).abs() <= 1e-13);
    assert!((eval_wallis_alpha_beta::<f64>(100, 5).unwrap() - w100).abs() <= 1e-12);
    let wd: D = wallis_seq(100).unwrap();
    let e = (eval_elezovic::<D>(100, 6).unwrap() - wd).abs().to_f64();
    assert!(e < 1e-16, "{e}");
}

#[test]
fn fewer_terms_beat_longer_truncations() {
    let err = |x: D, n: u64| (x - wallis_seq::<D>(n).unwrap()).abs();
    assert!(err(eval_wallis_alpha_beta(100, 3).unwrap(), 100) < err(eval_wallis_mu(100, 5), 100));
    assert!(err(eval_wallis_alpha_beta(10, 5).unwrap(), 10) < err(eval_wallis_mu(10, 9), 10));
    assert!(err(eval_wallis_omega(10, 5), 10) < err(eval_wallis_nu_exp(10, 9), 10));
}

#[test]
fn leading_forms() {
    for n in [1u64, 3, 17, 1000] {
        let x = n as f64;
        assert!((eval_wallis_mu::<f64>(n, 1) - PI / 2.0 * (1.0 - 0.25 / x)).abs() < 1e-15);
        assert!((eval_wallis_nu_exp::<f64>(n, 1) - PI / 2.0 * (-0.25 / x).exp()).abs() < 1e-15);
        assert_eq!(eval_elezovic::<f64>(n, 1).unwrap(), eval_wallis_alpha_beta::<f64>(n, 1).unwrap());
    }
    let coeffs: Vec<_> = ELEZOVIC_TERMS.iter().map(|&(a, b, _)| rat(a, b)).collect();
    assert_eq!(
        coeffs,
        [rat(-1, 4), rat(3, 256), rat(3, 2048), rat(-51, 16384), rat(-75, 65536), rat(2253, 1048576)]
    );
}

#[test]
fn observed_convergence_orders() {
    for j in 1..=4 {
        let f = ExpansionFamily::<D>::new(FamilyTag::WallisMu, j, None).unwrap();
        let o = convergence_order(&f, &[100, 200]).unwrap()[0].order.unwrap().to_f64();
        assert!((o - (j + 1) as f64).abs() <= 0.2, "J={j}: {o}");
    }
    let f = ExpansionFamily::new(FamilyTag::WPq, 3, Some((dc(1.0), dc(0.5)))).unwrap();
    let o = convergence_order(&f, &[200, 400]).unwrap()[0].order.unwrap().to_f64();
    assert!((o - 4.0).abs() <= 0.2, "{o}");
    let f = ExpansionFamily::<D>::new(FamilyTag::WallisOmega, 2, None).unwrap();
    let o = convergence_order(&f, &[100, 200]).unwrap()[0].order.unwrap().to_f64();
    assert!((o - 5.0).abs() <= 0.3, "{o}");
}

#[test]
fn unresolved_errors_are_flagged() {
    // in f64 the L = 5 error at n = 800 is far below rounding
    let f = ExpansionFamily::<f64>::new(FamilyTag::WallisOmega, 5, None).unwrap();
    let est = convergence_order(&f, &[400, 800]).unwrap();
    assert_eq!(est[0].order, None);
}

#[test]
fn reports_flag_small_n() {
    let f = ExpansionFamily::<f64>::new(FamilyTag::WallisNuExp, 3, None).unwrap();
    let r = f.report(1).unwrap();
    assert!(!r.asymptotic);
    assert!(r.to_plain(6).contains("asymptotic regime not reached"));
    assert_eq!(r.abs_err, (r.approx - r.exact).norm());
    assert!(r.rel_err.is_some());
}

#[test]
fn zero_exact_value_has_no_relative_error() {
    let f = ExpansionFamily::new(FamilyTag::WPq, 1, Some((c(-5.0), c(6.0)))).unwrap();
    // W_inf(-5, 6) vanishes through a gamma pole
    assert!(matches!(f.report(10), Err(Error::Pole(_))));
    let f = ExpansionFamily::new(FamilyTag::WPq, 2, Some((c(-0.5), c(0.0)))).unwrap();
    assert!(f.report(10).unwrap().rel_err.is_some());
}

#[test]
fn bounds_report() {
    let r = check_bounds::<f64>(10_000).unwrap();
    assert!(r.passed());
    assert_eq!(r.first_violation(), None);
    assert!(r.gap_at_one.abs() <= 1e-12);
    assert!((r.beta - 2.614909986).abs() < 1e-9);
}
