//! Named invariant suites, runnable from the command line.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::coeffs::{
    a_poly, alpha_beta, delta_expansion, exp_compose, nu_closed, nu_raw, omega, omega_alt, spec_poly_branch,
    wallis_mu, wallis_nu, Specialization,
};
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::exact::rational::{binomial_q, int, rat, Rational};
use crate::exact::{bernoulli_number, bernoulli_poly, eval_unipoly};
use crate::expansion::check_bounds;
use crate::products::{r_product, w_product};
use crate::scalar::{ComplexExt, Real};
use crate::special::{r_closed, r_inf, ser_partial, w_closed, w_inf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Bernoulli,
    Coeffs,
    ClosedForms,
    Limits,
    Bounds,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Self::Bernoulli, Self::Coeffs, Self::ClosedForms, Self::Limits, Self::Bounds];

    pub fn name(self) -> &'static str {
        match self {
            Self::Bernoulli => "bernoulli",
            Self::Coeffs => "coeffs",
            Self::ClosedForms => "closedforms",
            Self::Limits => "limits",
            Self::Bounds => "bounds",
            Self::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::EACH
            .into_iter()
            .chain([Self::All])
            .find(|x| x.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(suite: Suite, name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { suite, name: name.to_string(), passed, detail: detail.into() }
}

/// Runs a suite (or every suite) and returns one entry per invariant.
pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Bernoulli => bernoulli_suite(),
        Suite::Coeffs => coeffs_suite(),
        Suite::ClosedForms => closed_form_suite(),
        Suite::Limits => limits_suite(),
        Suite::Bounds => bounds_suite(),
        Suite::All => Suite::EACH.into_iter().flat_map(run_suite).collect(),
    }
}

fn first_failure<I: IntoIterator<Item = (String, bool)>>(cases: I) -> (bool, String) {
    let mut count = 0;
    for (label, ok) in cases {
        count += 1;
        if !ok {
            return (false, format!("fails at {label}"));
        }
    }
    (true, format!("{count} cases"))
}

fn bernoulli_suite() -> Vec<Check> {
    let s = Suite::Bernoulli;
    let grid = [rat(0, 1), rat(1, 3), rat(-2, 5), rat(7, 4), int(5), rat(1, 2)];
    let sgn = |n: usize| if n % 2 == 0 { int(1) } else { int(-1) };
    let mut out = Vec::new();

    let (ok, d) = first_failure((1..=30).map(|n| {
        let sum = (0..=n).fold(Rational::zero(), |acc, k| acc + binomial_q(n as u64 + 1, k as u64) * bernoulli_number(k));
        (format!("n={n}"), sum.is_zero())
    }));
    out.push(check(s, "recurrence sum C(n+1,k) B_k = 0, n <= 30", ok, d));

    let (ok, d) = first_failure((1..=15).map(|k| (format!("k={k}"), bernoulli_number(2 * k + 1).is_zero())));
    out.push(check(s, "odd Bernoulli numbers vanish, k <= 15", ok, d));

    out.push(check(
        s,
        "B_1 = -1/2",
        bernoulli_number(1) == rat(-1, 2),
        "convention of z e^{tz}/(e^z - 1) at t = 0",
    ));

    let (ok, d) = first_failure((0..=30).flat_map(|n| {
        let b = bernoulli_poly(n);
        grid.clone().into_iter().map(move |x| {
            let lhs = eval_unipoly(&b, &(int(1) - &x));
            (format!("n={n} x={x}"), lhs == sgn(n) * eval_unipoly(&b, &x))
        })
    }));
    out.push(check(s, "reflection B_n(1-x) = (-1)^n B_n(x)", ok, d));

    let (ok, d) = first_failure((1..=30).flat_map(|n| {
        let b = bernoulli_poly(n);
        grid.clone().into_iter().map(move |x| {
            let lhs = sgn(n) * eval_unipoly(&b, &-x.clone());
            let rhs = eval_unipoly(&b, &x) + int(n as i64) * num_traits::pow(x.clone(), n - 1);
            (format!("n={n} x={x}"), lhs == rhs)
        })
    }));
    out.push(check(s, "shift (-1)^n B_n(-x) = B_n(x) + n x^(n-1)", ok, d));

    let (ok, d) = first_failure((0..=30).map(|n| {
        let half = eval_unipoly(&bernoulli_poly(n), &rat(1, 2));
        let two = num_traits::pow(rat(1, 2), n) * int(2);
        (format!("n={n}"), half == -(int(1) - two) * bernoulli_number(n))
    }));
    out.push(check(s, "half argument B_n(1/2) = -(1 - 2^(1-n)) B_n", ok, d));
    out
}

fn coeffs_suite() -> Vec<Check> {
    let s = Suite::Coeffs;
    let mut out = Vec::new();

    let (ok, d) = first_failure((1..=15).flat_map(|j| {
        [Specialization::W, Specialization::R].into_iter().map(move |spec| {
            let e = delta_expansion(j + 1, spec, false);
            let clean = e.terms().all(|(&(_, m), c)| m % 2 == 0 || c.is_zero());
            (format!("j={j} {spec:?}"), clean)
        })
    }));
    out.push(check(s, "odd powers of Delta cancel, j <= 15", ok, d));

    let (ok, d) = first_failure((1..=10).flat_map(|j| {
        [Specialization::W, Specialization::R].into_iter().map(move |spec| {
            let same = spec_poly_branch(j, spec, false) == spec_poly_branch(j, spec, true);
            (format!("j={j} {spec:?}"), same)
        })
    }));
    out.push(check(s, "a_j and b_j independent of the Delta branch, j <= 10", ok, d));

    let want = [rat(1, 4), rat(1, 8), rat(5, 96)];
    let got: Vec<Rational> = (1..=3).map(|j| a_poly(j).eval(&int(0), &rat(-1, 4))).collect();
    out.push(check(s, "a_j(0, -1/4) = 1/4, 1/8, 5/96", got == want, {
        got.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
    }));

    let (ok, d) = first_failure((1..=12).map(|l| (format!("L={l}"), omega(l) == omega_alt(l))));
    out.push(check(s, "omega = omega_alt exactly, L <= 12", ok, d));

    let nu = wallis_nu(12);
    let composed = exp_compose(nu.singles(), 12);
    let mu_ok = composed.as_deref().ok() == Some(wallis_mu(12).singles());
    out.push(check(s, "mu = exp-composition of nu, J <= 12", mu_ok, "exact"));

    let (ok, d) = first_failure((1..=16).map(|j| (format!("j={j}"), nu_closed(j) == nu_raw(j))));
    out.push(check(s, "nu closed form = raw Bernoulli form", ok, d));

    let ab = alpha_beta(4);
    let ok = ab.as_ref().ok().map(|a| a.pairs_ref()[3].clone())
        == Some((rat(224573, 93782016), rat(22119189899, 41134587264)));
    out.push(check(s, "alpha_4, beta_4 reproduced", ok, "exact"));
    out
}

type C = Complex<f64>;

/// `(p, q)` grid for the closed-form comparison, including complex values.
pub fn closed_form_grid() -> Vec<(C, C)> {
    let c = C::new;
    vec![
        (c(0.0, 0.0), c(-0.25, 0.0)),
        (c(1.0, 0.0), c(0.5, 0.0)),
        (c(-1.0, 0.0), c(0.25, 0.0)),
        (c(2.0, 0.0), c(2.0, 0.0)),
        (c(1.0, 1.0), c(0.5, -1.0)),
        (c(0.5, 0.0), c(0.0, 0.0)),
        (c(3.0, 0.0), c(1.0, 0.0)),
        (c(-0.5, 0.0), c(0.3, 0.0)),
        (c(0.0, 1.0), c(2.0, 0.0)),
        (c(2.0, -1.0), c(-1.0, 0.5)),
    ]
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

fn closed_form_suite() -> Vec<Check> {
    let s = Suite::ClosedForms;
    let mut out = Vec::new();
    for (name, direct, closed) in [
        ("w_product = w_closed within 1e-10, 30 cases", w_product as fn(u64, C, C) -> _, w_closed as fn(u64, C, C) -> _),
        ("r_product = r_closed within 1e-10, 30 cases", r_product, r_closed),
    ] {
        let mut worst = 0.0f64;
        let mut failure = None;
        for (p, q) in closed_form_grid() {
            for n in [10, 100, 1000] {
                match (direct(n, p, q), closed(n, p, q)) {
                    (Ok(a), Ok(b)) => {
                        let e = rel(a.value, b.value);
                        worst = worst.max(e);
                        if e.is_nan() || e > 1e-10 {
                            failure.get_or_insert(format!("n={n} p={p} q={q}: {e:.3e}"));
                        }
                    }
                    (a, b) => {
                        failure.get_or_insert(format!("n={n} p={p} q={q}: {:?} / {:?}", a.err(), b.err()));
                    }
                }
            }
        }
        let detail = failure.clone().unwrap_or_else(|| format!("worst relative {worst:.3e}"));
        out.push(check(s, name, failure.is_none(), detail));
    }
    out
}

/// `(label, computed, expected)` for each classical limit identity.
pub fn limit_identities() -> Result<Vec<(&'static str, C, C)>> {
    let c = |x: f64| C::new(x, 0.0);
    let pi = std::f64::consts::PI;
    let g = f64::euler_gamma();
    let eg = g.exp();
    let alpha = 1.0 / 3.0;
    let beta = 0.5;
    let wilf = ((pi / 2.0).exp() + (-pi / 2.0).exp()) / (pi * eg);
    let choi1 = 2.0 * ((pi * alpha).exp() + (-pi * alpha).exp()) / ((4.0 * alpha * alpha + 1.0) * pi * eg);
    let choi2 = ((pi * beta).exp() - (-pi * beta).exp()) / (2.0 * beta * (beta * beta + 1.0) * pi * (2.0 * g).exp());
    let weier = |p: f64| -> Result<C> {
        let lg = crate::special::ln_gamma(c(p + 1.0))?;
        Ok(w_inf(c(p), c(0.0))? * (lg + c(p * g)).exp_c())
    };
    Ok(vec![
        ("w_inf(0,-1/4) = 2/pi", w_inf(c(0.0), c(-0.25))?, c(2.0 / pi)),
        ("w_inf(1,1/2) = Wilf constant", w_inf(c(1.0), c(0.5))?, c(wilf)),
        ("w_inf(-1,1/4) = e^gamma/pi", w_inf(c(-1.0), c(0.25))?, c(eg / pi)),
        ("w_inf(1, alpha^2+1/4), alpha = 1/3", w_inf(c(1.0), c(alpha * alpha + 0.25))?, c(choi1)),
        ("w_inf(2, beta^2+1), beta = 1/2", w_inf(c(2.0), c(beta * beta + 1.0))?, c(choi2)),
        ("r_inf(-2,0) = -2e^gamma", r_inf(c(-2.0), c(0.0))?, c(-2.0 * eg)),
        ("r_inf(2,0) = 1/(2e^gamma)", r_inf(c(2.0), c(0.0))?, c(0.5 / eg)),
        ("Weierstrass p = 1/2", weier(0.5)?, c(1.0)),
        ("Weierstrass p = 3/2", weier(1.5)?, c(1.0)),
        ("Weierstrass p = 5/2", weier(2.5)?, c(1.0)),
    ])
}

fn limits_suite() -> Vec<Check> {
    let s = Suite::Limits;
    let mut out = Vec::new();
    match limit_identities() {
        Ok(ids) => {
            for (name, got, want) in ids {
                let e = rel(got, want);
                out.push(check(s, name, e <= 1e-11, format!("relative error {e:.3e}")));
            }
        }
        Err(e) => out.push(check(s, "limit identities", false, e.to_string())),
    }
    let eg = f64::euler_gamma().exp();
    let ser: Result<Vec<f64>> = (1..=12).map(ser_partial::<f64>).collect();
    let ok = match &ser {
        Ok(v) => v.windows(2).all(|w| w[0] < w[1] && w[1] < eg) && (v[11] - eg).abs() < (v[3] - eg).abs(),
        Err(_) => false,
    };
    let detail = match &ser {
        Ok(v) => format!("N=12 gap {:.3e}", eg - v[11]),
        Err(e) => e.to_string(),
    };
    out.push(check(s, "Ser partial products increase toward e^gamma, N <= 12", ok, detail));
    out
}

fn bounds_suite() -> Vec<Check> {
    let s = Suite::Bounds;
    match check_bounds::<DoubleDouble>(10_000) {
        Ok(r) => {
            let gap = r.gap_at_one.to_f64().abs();
            vec![
                check(
                    s,
                    "two-sided Wallis bounds hold, n <= 10^4",
                    r.passed(),
                    format!(
                        "violations {}, unresolved {}, min margins {:.3e} / {:.3e}",
                        r.violations.len(),
                        r.unresolved.len(),
                        r.min_lower_margin.to_f64(),
                        r.min_upper_margin.to_f64()
                    ),
                ),
                check(s, "upper bound is attained at n = 1", gap <= 1e-12, format!("gap {gap:.3e}")),
            ]
        }
        Err(e) => vec![check(s, "two-sided Wallis bounds hold, n <= 10^4", false, e.to_string())],
    }
}

/// Renders results as `PASS|FAIL suite: name (detail)` lines.
pub fn to_plain(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| format!("{} {}: {} ({})\n", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail))
        .collect()
}

pub fn to_json(checks: &[Check]) -> String {
    let rows: Vec<serde_json::Value> = checks
        .iter()
        .map(|c| serde_json::json!({"suite": c.suite.name(), "name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    serde_json::Value::Array(rows).to_string()
}

pub fn to_csv(checks: &[Check]) -> String {
    let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
    let mut out = String::from("suite,name,passed,detail\n");
    for c in checks {
        out.push_str(&format!("{},{},{},{}\n", c.suite, quote(&c.name), c.passed, quote(&c.detail)));
    }
    out
}
