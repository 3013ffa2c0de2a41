//! Truncated asymptotic expansions, their true errors against the direct
//! products, empirical convergence orders, and the two-sided Wallis bounds.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::coeffs::bipoly::eval_bipoly;
use crate::coeffs::generic::{spec_polys, Specialization};
use crate::coeffs::wallis::{alpha_beta, omega, wallis_mu, wallis_nu};
use crate::error::{Error, Result};
use crate::exact::rational::{rat, Rational};
use crate::products::{r_product, w_product, wallis_seq};
use crate::report::{fmt_complex, fmt_real, json_complex, json_real};
use crate::scalar::{CompensatedSum, ComplexExt, ComplexSum, Real};
use crate::special::limits::{r_inf, w_inf};

/// `(numerator, denominator, power of 1/(n + 5/8))` of the cited
/// shifted expansion, in order.
pub const ELEZOVIC_TERMS: [(i64, i64, i32); 6] = [
    (-1, 4, 1),
    (3, 256, 3),
    (3, 2048, 4),
    (-51, 16384, 5),
    (-75, 65536, 6),
    (2253, 1048576, 7),
];

fn to_t<T: Real>(r: &Rational) -> T {
    T::from_rational(r).expect("coefficient fits the scalar type")
}

fn nt<T: Real>(n: u64) -> T {
    T::from_u64(n).expect("index fits")
}

fn half_pi<T: Real>() -> T {
    T::pi() * T::of(0.5)
}

fn log_series<T: Real>(
    polys: &[crate::coeffs::BiPoly<Rational>],
    x: T,
    p: Complex<T>,
    q: Complex<T>,
) -> Result<Complex<T>> {
    let mut s = ComplexSum::new();
    let inv = T::one() / x;
    let mut pow = inv;
    for poly in polys {
        s.add(eval_bipoly(poly, p, q)? * pow);
        pow *= inv;
    }
    Ok(s.value())
}

fn limit_or_pole<T: Real>(v: Complex<T>, what: &str) -> Result<Complex<T>> {
    if v.is_zero() {
        Err(Error::Pole(format!("{what}: the limit vanishes through a gamma pole")))
    } else {
        Ok(v)
    }
}

/// `W_inf(p,q) exp(sum_{j<=J} a_j(p,q) / (n+1)^j)`.
pub fn eval_w_expansion<T: Real>(n: u64, p: Complex<T>, q: Complex<T>, order: usize) -> Result<Complex<T>> {
    let lim = limit_or_pole(w_inf(p, q)?, "W_inf")?;
    let s = log_series(&spec_polys(Specialization::W, order), nt::<T>(n) + T::one(), p, q)?;
    Ok(lim * s.exp_c())
}

/// `R_inf(p,q) exp(sum_{j<=J} b_j(p,q) / (n+1/2)^j)`.
pub fn eval_r_expansion<T: Real>(n: u64, p: Complex<T>, q: Complex<T>, order: usize) -> Result<Complex<T>> {
    let lim = limit_or_pole(r_inf(p, q)?, "R_inf")?;
    let s = log_series(&spec_polys(Specialization::R, order), nt::<T>(n) + T::of(0.5), p, q)?;
    Ok(lim * s.exp_c())
}

/// `sum_k c_k x^{-k}` over exact coefficients.
fn power_sum<T: Real>(coeffs: &[Rational], x: T) -> T {
    let inv = T::one() / x;
    let mut pow = inv;
    let mut s = CompensatedSum::new();
    for c in coeffs {
        s.add(to_t::<T>(c) * pow);
        pow *= inv;
    }
    s.value()
}

/// `(pi/2)(1 + sum_{j<=J} mu_j / n^j)`.
pub fn eval_wallis_mu<T: Real>(n: u64, order: usize) -> T {
    let mu = wallis_mu(order);
    half_pi::<T>() * (T::one() + power_sum(mu.singles(), nt::<T>(n)))
}

/// `(pi/2) exp(sum_{j<=J} nu_j / n^j)`.
pub fn eval_wallis_nu_exp<T: Real>(n: u64, order: usize) -> T {
    let nu = wallis_nu(order);
    half_pi::<T>() * power_sum(nu.singles(), nt::<T>(n)).exp()
}

/// `(pi/2)(1 + sum_{l<=L} alpha_l / (n + beta_l)^{2l-1})`.
pub fn eval_wallis_alpha_beta<T: Real>(n: u64, order: usize) -> Result<T> {
    let ab = alpha_beta(order)?;
    let x = nt::<T>(n);
    let mut s = CompensatedSum::new();
    for (l, (a, b)) in ab.pairs_ref().iter().enumerate().map(|(i, v)| (i + 1, v)) {
        let base = x + to_t::<T>(b);
        s.add(to_t::<T>(a) / base.powi(2 * l as i32 - 1));
    }
    Ok(half_pi::<T>() * (T::one() + s.value()))
}

/// `(pi/2) exp(sum_{l<=L} omega_l / (n + 1/2)^{2l-1})`.
pub fn eval_wallis_omega<T: Real>(n: u64, order: usize) -> T {
    let w = omega(order);
    let inv = T::one() / (nt::<T>(n) + T::of(0.5));
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut s = CompensatedSum::new();
    for c in w.singles() {
        s.add(to_t::<T>(c) * pow);
        pow *= inv2;
    }
    half_pi::<T>() * s.value().exp()
}

/// The first `terms` (1..=6) non-constant terms of the cited expansion in
/// `1/(n + 5/8)`.
pub fn eval_elezovic<T: Real>(n: u64, terms: usize) -> Result<T> {
    if !(1..=ELEZOVIC_TERMS.len()).contains(&terms) {
        return Err(Error::InvalidInput(format!("term count must be 1..=6, got {terms}")));
    }
    let x = nt::<T>(n) + T::of(0.625);
    let mut s = CompensatedSum::new();
    for &(num, den, k) in &ELEZOVIC_TERMS[..terms] {
        s.add(to_t::<T>(&rat(num, den)) / x.powi(k));
    }
    Ok(half_pi::<T>() * (T::one() + s.value()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    WPq,
    RPq,
    WallisMu,
    WallisNuExp,
    WallisAlphaBeta,
    WallisOmega,
    Elezovic,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 7] = [
        Self::WPq,
        Self::RPq,
        Self::WallisMu,
        Self::WallisNuExp,
        Self::WallisAlphaBeta,
        Self::WallisOmega,
        Self::Elezovic,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::WPq => "W_PQ",
            Self::RPq => "R_PQ",
            Self::WallisMu => "WALLIS_MU",
            Self::WallisNuExp => "WALLIS_NU_EXP",
            Self::WallisAlphaBeta => "WALLIS_ALPHA_BETA",
            Self::WallisOmega => "WALLIS_OMEGA",
            Self::Elezovic => "ELEZOVIC",
        }
    }

    pub fn needs_params(self) -> bool {
        matches!(self, Self::WPq | Self::RPq)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;
    /// Accepts the tags and the short names `w`, `r`, `mu`, `nu`,
    /// `alphabeta`, `omega`, `elezovic`.
    fn from_str(s: &str) -> Result<Self> {
        let k = s.to_ascii_lowercase().replace(['-', '_'], "");
        Ok(match k.as_str() {
            "wpq" | "w" => Self::WPq,
            "rpq" | "r" => Self::RPq,
            "wallismu" | "mu" => Self::WallisMu,
            "wallisnuexp" | "nu" | "nuexp" => Self::WallisNuExp,
            "wallisalphabeta" | "alphabeta" | "ab" => Self::WallisAlphaBeta,
            "wallisomega" | "omega" => Self::WallisOmega,
            "elezovic" => Self::Elezovic,
            _ => return Err(Error::Parse(format!("unknown expansion family {s:?}"))),
        })
    }
}

/// A family, a truncation order, and `(p, q)` for the two-parameter families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpansionFamily<T> {
    tag: FamilyTag,
    order: usize,
    params: Option<(Complex<T>, Complex<T>)>,
}

impl<T: Real> ExpansionFamily<T> {
    pub fn new(tag: FamilyTag, order: usize, params: Option<(Complex<T>, Complex<T>)>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("expansion order must be at least 1".into()));
        }
        if tag == FamilyTag::Elezovic && order > ELEZOVIC_TERMS.len() {
            return Err(Error::InvalidInput("the cited expansion has 6 terms".into()));
        }
        if tag.needs_params() != params.is_some() {
            return Err(Error::InvalidInput(format!(
                "{tag} {} (p, q)",
                if tag.needs_params() { "requires" } else { "takes no" }
            )));
        }
        Ok(Self { tag, order, params })
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn params(&self) -> Option<(Complex<T>, Complex<T>)> {
        self.params
    }

    fn pq(&self) -> (Complex<T>, Complex<T>) {
        self.params.expect("checked at construction")
    }

    /// The variable the family expands in: `n+1`, `n+1/2`, `n+5/8` or `n`.
    pub fn variable(&self, n: u64) -> T {
        let x = nt::<T>(n);
        match self.tag {
            FamilyTag::WPq => x + T::one(),
            FamilyTag::RPq | FamilyTag::WallisOmega | FamilyTag::WallisAlphaBeta => x + T::of(0.5),
            FamilyTag::Elezovic => x + T::of(0.625),
            FamilyTag::WallisMu | FamilyTag::WallisNuExp => x,
        }
    }

    pub fn evaluate(&self, n: u64) -> Result<Complex<T>> {
        let real = |x: T| Complex::new(x, T::zero());
        Ok(match self.tag {
            FamilyTag::WPq => {
                let (p, q) = self.pq();
                eval_w_expansion(n, p, q, self.order)?
            }
            FamilyTag::RPq => {
                let (p, q) = self.pq();
                eval_r_expansion(n, p, q, self.order)?
            }
            FamilyTag::WallisMu => real(eval_wallis_mu(n, self.order)),
            FamilyTag::WallisNuExp => real(eval_wallis_nu_exp(n, self.order)),
            FamilyTag::WallisAlphaBeta => real(eval_wallis_alpha_beta(n, self.order)?),
            FamilyTag::WallisOmega => real(eval_wallis_omega(n, self.order)),
            FamilyTag::Elezovic => real(eval_elezovic(n, self.order)?),
        })
    }

    /// The directly multiplied product the family approximates.
    pub fn exact(&self, n: u64) -> Result<Complex<T>> {
        Ok(match self.tag {
            FamilyTag::WPq => {
                let (p, q) = self.pq();
                w_product(n, p, q)?.value
            }
            FamilyTag::RPq => {
                let (p, q) = self.pq();
                r_product(n, p, q)?.value
            }
            _ => Complex::new(wallis_seq::<T>(n)?, T::zero()),
        })
    }

    /// Exponent of the first omitted nonzero term, i.e. the expected
    /// convergence order in [`Self::variable`].
    pub fn first_omitted_exponent(&self) -> Result<u32> {
        let l = self.order as u32;
        let next_nonzero = |coeffs: &[Rational]| {
            coeffs
                .iter()
                .enumerate()
                .skip(self.order)
                .find(|(_, c)| !c.is_zero())
                .map(|(i, _)| i as u32 + 1)
        };
        let none = || Error::Range("no nonzero omitted term within the search window".into());
        match self.tag {
            FamilyTag::WallisMu => next_nonzero(wallis_mu(self.order + 8).singles()).ok_or_else(none),
            FamilyTag::WallisNuExp => next_nonzero(wallis_nu(self.order + 8).singles()).ok_or_else(none),
            FamilyTag::WallisAlphaBeta | FamilyTag::WallisOmega => Ok(2 * l + 1),
            FamilyTag::Elezovic => Ok(if l == 1 { 3 } else { l + 2 }),
            FamilyTag::WPq | FamilyTag::RPq => {
                let spec = if self.tag == FamilyTag::WPq { Specialization::W } else { Specialization::R };
                let (p, q) = self.pq();
                let exact = match (p.re.to_rational(), q.re.to_rational()) {
                    (Some(pr), Some(qr)) if p.im.is_zero() && q.im.is_zero() => Some((pr, qr)),
                    _ => None,
                };
                let polys = spec_polys(spec, self.order + 8);
                for (j, poly) in polys.iter().enumerate().skip(self.order) {
                    let nonzero = match &exact {
                        Some((pr, qr)) => !poly.eval(pr, qr).is_zero(),
                        None => eval_bipoly(poly, p, q)?.modulus() > T::unit_roundoff() * T::of(64.0),
                    };
                    if nonzero {
                        return Ok(j as u32 + 1);
                    }
                }
                Err(none())
            }
        }
    }

    pub fn report(&self, n: u64) -> Result<ErrorReport<T>> {
        let approx = self.evaluate(n)?;
        let exact = self.exact(n)?;
        let abs_err = (approx - exact).modulus();
        let size = exact.modulus();
        let rel_err = if size.is_zero() { None } else { Some(abs_err / size) };
        Ok(ErrorReport {
            family: self.tag,
            order: self.order,
            n,
            approx,
            exact,
            abs_err,
            rel_err,
            est_order: None,
            asymptotic: n as usize >= self.order,
        })
    }
}

/// One row of an error table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorReport<T> {
    pub family: FamilyTag,
    pub order: usize,
    pub n: u64,
    pub approx: Complex<T>,
    pub exact: Complex<T>,
    pub abs_err: T,
    /// `None` when the exact value is zero.
    pub rel_err: Option<T>,
    /// Order estimated from this row and the previous one.
    pub est_order: Option<T>,
    /// `false` when `n < order`: the asymptotic regime is not reached.
    pub asymptotic: bool,
}

fn fmt_value<T: Real>(z: Complex<T>, digits: usize) -> String {
    if z.im.is_zero() {
        fmt_real(z.re, digits)
    } else {
        fmt_complex(z, digits)
    }
}

impl<T: Real> ErrorReport<T> {
    pub const CSV_HEADER: &'static str = "family,order,n,approx,exact,abs_err,rel_err,est_order";

    pub fn to_csv_row(&self, digits: usize) -> String {
        let opt = |o: Option<T>| o.map_or(String::new(), |v| fmt_real(v, digits));
        format!(
            "{},{},{},{},{},{},{},{}",
            self.family,
            self.order,
            self.n,
            fmt_value(self.approx, digits),
            fmt_value(self.exact, digits),
            fmt_real(self.abs_err, digits),
            opt(self.rel_err),
            opt(self.est_order)
        )
    }

    pub fn to_json(&self, digits: usize) -> String {
        let opt = |o: Option<T>| o.map_or("null".to_string(), |v| json_real(v, digits));
        format!(
            r#"{{"family":"{}","order":{},"n":{},"approx":{},"exact":{},"abs_err":{},"rel_err":{},"est_order":{},"asymptotic_regime":{}}}"#,
            self.family,
            self.order,
            self.n,
            json_complex(self.approx, digits),
            json_complex(self.exact, digits),
            json_real(self.abs_err, digits),
            opt(self.rel_err),
            opt(self.est_order),
            self.asymptotic
        )
    }

    pub fn to_plain(&self, digits: usize) -> String {
        let mut s = format!(
            "{} order {} n {}: approx {} exact {} abs_err {}",
            self.family,
            self.order,
            self.n,
            fmt_value(self.approx, digits),
            fmt_value(self.exact, digits),
            fmt_real(self.abs_err, digits)
        );
        if let Some(r) = self.rel_err {
            s.push_str(&format!(" rel_err {}", fmt_real(r, digits)));
        }
        if let Some(o) = self.est_order {
            s.push_str(&format!(" est_order {}", fmt_real(o, digits.min(6))));
        }
        if !self.asymptotic {
            s.push_str(" (asymptotic regime not reached)");
        }
        s
    }
}

/// Order estimate between two consecutive grid points; `None` when either
/// error is at the rounding floor of `T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderEstimate<T> {
    pub n: u64,
    pub n_next: u64,
    pub order: Option<T>,
}

fn resolved<T: Real>(r: &ErrorReport<T>) -> bool {
    r.abs_err > T::unit_roundoff() * T::of(16.0) * r.exact.modulus().max(T::one())
}

fn check_grid(ns: &[u64]) -> Result<()> {
    if ns.len() < 2 || ns.windows(2).any(|w| w[0] >= w[1]) || ns[0] == 0 {
        return Err(Error::InvalidInput("n values must be positive, strictly increasing, at least two".into()));
    }
    Ok(())
}

/// Error reports over a grid, each with the order estimated from its
/// predecessor.
pub fn error_table<T: Real>(family: &ExpansionFamily<T>, ns: &[u64]) -> Result<Vec<ErrorReport<T>>> {
    let mut rows: Vec<ErrorReport<T>> = ns.iter().map(|&n| family.report(n)).collect::<Result<_>>()?;
    for i in 1..rows.len() {
        let (a, b) = (rows[i - 1], rows[i]);
        if resolved(&a) && resolved(&b) {
            let ratio = (family.variable(b.n) / family.variable(a.n)).ln();
            rows[i].est_order = Some((a.abs_err / b.abs_err).ln() / ratio);
        }
    }
    Ok(rows)
}

/// `log(err(n)/err(n')) / log(x(n')/x(n))` for consecutive grid points,
/// with `x` the family's expansion variable.
pub fn convergence_order<T: Real>(family: &ExpansionFamily<T>, ns: &[u64]) -> Result<Vec<OrderEstimate<T>>> {
    check_grid(ns)?;
    let rows = error_table(family, ns)?;
    Ok(rows
        .windows(2)
        .map(|w| OrderEstimate { n: w[0].n, n_next: w[1].n, order: w[1].est_order })
        .collect())
}

/// Outcome of checking
/// `(pi/2)(1 - 1/(4n + 5/2)) < W_n <= (pi/2)(1 - 1/(4n + beta))`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport<T> {
    pub n_max: u64,
    pub beta: T,
    /// Indices where a bound fails by more than the rounding tolerance.
    pub violations: Vec<u64>,
    /// Indices where a margin is within rounding tolerance of zero (other
    /// than the expected equality at `n = 1`).
    pub unresolved: Vec<u64>,
    /// `upper(1) - W_1`, zero in exact arithmetic.
    pub gap_at_one: T,
    /// Smallest relative margins seen on each side (`n >= 2` for the upper).
    pub min_lower_margin: T,
    pub min_upper_margin: T,
}

impl<T: Real> BoundsReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.unresolved.is_empty()
    }

    pub fn first_violation(&self) -> Option<u64> {
        self.violations.first().copied()
    }
}

/// `beta = (32 - 9 pi) / (3 pi - 8)`.
pub fn bounds_beta<T: Real>() -> T {
    let pi = T::pi();
    (T::of(32.0) - T::of(9.0) * pi) / (T::of(3.0) * pi - T::of(8.0))
}

/// Checks both bounds for every `1 <= n <= n_max`, building `W_n`
/// incrementally in log space.
pub fn check_bounds<T: Real>(n_max: u64) -> Result<BoundsReport<T>> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let hp = half_pi::<T>();
    let beta = bounds_beta::<T>();
    let alpha = T::of(2.5);
    let tol = T::unit_roundoff() * T::of(64.0);
    let mut log = CompensatedSum::new();
    let mut report = BoundsReport {
        n_max,
        beta,
        violations: Vec::new(),
        unresolved: Vec::new(),
        gap_at_one: T::zero(),
        min_lower_margin: T::infinity(),
        min_upper_margin: T::infinity(),
    };
    for n in 1..=n_max {
        let four_n = T::of(4.0) * nt::<T>(n);
        log.add((T::one() / (four_n * nt::<T>(n) - T::one())).ln_1p());
        let w = log.value().exp();
        let lower = hp * (T::one() - T::one() / (four_n + alpha));
        let upper = hp * (T::one() - T::one() / (four_n + beta));
        let lm = (w - lower) / w;
        let um = (upper - w) / w;
        report.min_lower_margin = report.min_lower_margin.min(lm);
        if n == 1 {
            report.gap_at_one = upper - w;
        } else {
            report.min_upper_margin = report.min_upper_margin.min(um);
        }
        if lm < -tol || (n > 1 && um < -tol) {
            report.violations.push(n);
        } else if lm.abs() <= tol || (n > 1 && um.abs() <= tol) {
            report.unresolved.push(n);
        }
    }
    Ok(report)
}
