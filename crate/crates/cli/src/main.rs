//! `wallis`: coefficient tables, product and expansion evaluation, identity
//! checks and constants.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 pole.

mod literal;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use wallis_core::coeffs::{a_poly, alpha_beta, b_poly, eval_bipoly, omega, wallis_mu, wallis_nu, CoeffSeries};
use wallis_core::expansion::{ErrorReport, ExpansionFamily, FamilyTag};
use wallis_core::products::{r_product, w_product, wallis_seq, ProductResult};
use wallis_core::report::{fmt_complex, fmt_real, json_complex, json_real};
use wallis_core::special::{constants, r_closed, w_closed};
use wallis_core::verify::{run_suite, Suite};
use wallis_core::{verify, DoubleDouble, Error, Real};

use literal::{parse_complex, ComplexLiteral};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Scalar {
    F64,
    Dd,
}

#[derive(Parser, Debug)]
#[command(name = "wallis", version, about = "Wallis-type products: exact coefficients and numerics")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Significant digits for decimal output.
    #[arg(long, env = "WALLIS_DIGITS", default_value_t = 17, global = true,
          value_parser = clap::value_parser!(u16).range(1..=40))]
    digits: u16,
    /// Scalar type for numeric work (`dd` is double-double, about 32 digits).
    #[arg(long, value_enum, default_value_t = Scalar::F64, global = true)]
    scalar: Scalar,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact coefficient table: a, b, nu, mu, omega or alphabeta.
    Coeffs {
        #[arg(long)]
        family: String,
        #[arg(long)]
        order: usize,
        /// Evaluate a_j / b_j at this p instead of printing polynomials.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Evaluate wproduct, rproduct, wallis, wclosed, rclosed or expansion:<family>.
    Eval {
        #[arg(long)]
        target: String,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Truncation order for expansions.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run identity suites: bernoulli, coeffs, closedforms, limits, bounds, all.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Limit constants to at least 30 digits.
    Constants,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Pole(_)) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let digits = cli.digits as usize;
    match &cli.command {
        Command::Coeffs { family, order, p, q } => {
            let pq = parse_pair(p, q)?;
            match cli.scalar {
                Scalar::F64 => cmd_coeffs::<f64>(family, *order, pq, cli.format, digits),
                Scalar::Dd => cmd_coeffs::<DoubleDouble>(family, *order, pq, cli.format, digits),
            }
        }
        Command::Eval { target, n, p, q, order } => {
            let pq = parse_pair(p, q)?;
            match cli.scalar {
                Scalar::F64 => cmd_eval::<f64>(target, *n, pq, *order, cli.format, digits),
                Scalar::Dd => cmd_eval::<DoubleDouble>(target, *n, pq, *order, cli.format, digits),
            }
        }
        Command::Verify { suite } => cmd_verify(suite, cli.format),
        Command::Constants => Ok((cmd_constants(cli.format, digits.max(30).min(32)), 0)),
    }
}

fn parse_pair(p: &Option<String>, q: &Option<String>) -> Result<Option<(ComplexLiteral, ComplexLiteral)>, Failure> {
    match (p, q) {
        (None, None) => Ok(None),
        (Some(p), Some(q)) => Ok(Some((parse_complex(p)?, parse_complex(q)?))),
        _ => Err(usage("--p and --q must be given together")),
    }
}

fn to_pair<T: Real>(pq: &(ComplexLiteral, ComplexLiteral)) -> Result<(Complex<T>, Complex<T>), Failure> {
    Ok((pq.0.to_complex()?, pq.1.to_complex()?))
}

fn series_output(s: &CoeffSeries, format: Format) -> String {
    match format {
        Format::Plain => format!("{}signs: {}\n", s.to_plain(), s.sign_pattern()),
        Format::Json => format!("{}\n", s.to_json()),
        Format::Csv => s.to_csv(None),
    }
}

fn cmd_coeffs<T: Real>(
    family: &str,
    order: usize,
    pq: Option<(ComplexLiteral, ComplexLiteral)>,
    format: Format,
    digits: usize,
) -> Outcome {
    if order == 0 {
        return Err(usage("--order must be at least 1"));
    }
    let fam = family.to_ascii_lowercase();
    let poly_family = matches!(fam.as_str(), "a" | "b");
    if pq.is_some() && !poly_family {
        return Err(usage(format!("family {family} takes no (p, q)")));
    }
    let series = match fam.as_str() {
        "a" | "b" => None,
        "nu" => Some(wallis_nu(order)),
        "mu" => Some(wallis_mu(order)),
        "omega" => Some(omega(order)),
        "alphabeta" | "alpha-beta" => Some(alpha_beta(order)?),
        _ => return Err(usage(format!("unknown coefficient family {family:?}; expected a, b, nu, mu, omega, alphabeta"))),
    };
    if let Some(s) = series {
        return Ok((series_output(&s, format), 0));
    }
    let polys: Vec<_> = (1..=order).map(|j| if fam == "a" { a_poly(j) } else { b_poly(j) }).collect();
    let tag = fam.to_ascii_uppercase();
    let out = match pq {
        None => match format {
            Format::Plain => polys.iter().enumerate().map(|(k, p)| format!("{}, {p}\n", k + 1)).collect(),
            Format::Json => {
                let vals: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
                format!("{}\n", serde_json::json!({"family": tag, "order": order, "values": vals}))
            }
            Format::Csv => {
                let rows: String = polys.iter().enumerate().map(|(k, p)| format!("{},{p}\n", k + 1)).collect();
                format!("index,polynomial\n{rows}")
            }
        },
        Some(pq) => {
            let (p, q) = to_pair::<T>(&pq)?;
            let vals = polys.iter().map(|poly| eval_bipoly(poly, p, q)).collect::<Result<Vec<_>, _>>()?;
            match format {
                Format::Plain => vals
                    .iter()
                    .enumerate()
                    .map(|(k, v)| format!("{}, {}\n", k + 1, fmt_complex(*v, digits)))
                    .collect(),
                Format::Json => {
                    let list: Vec<String> = vals.iter().map(|v| json_complex(*v, digits)).collect();
                    format!(
                        r#"{{"family":"{tag}","order":{order},"p":{},"q":{},"values":[{}]}}"#,
                        json_complex(p, digits),
                        json_complex(q, digits),
                        list.join(",")
                    ) + "\n"
                }
                Format::Csv => {
                    let rows: String = vals
                        .iter()
                        .enumerate()
                        .map(|(k, v)| format!("{},{},{}\n", k + 1, fmt_real(v.re, digits), fmt_real(v.im, digits)))
                        .collect();
                    format!("index,re,im\n{rows}")
                }
            }
        }
    };
    Ok((out, 0))
}

fn product_output<T: Real>(r: &ProductResult<T>, format: Format, digits: usize) -> String {
    let opt = |o: Option<u64>| o.map_or(String::new(), |v| v.to_string());
    match format {
        Format::Plain => format!(
            "value {}\nlog_abs {}\nphase {}\nzero_factor_at {}\nnear_zero_at {}\nterms {}\n",
            fmt_complex(r.value, digits),
            fmt_real(r.log_abs, digits),
            fmt_real(r.phase, digits),
            o_or_none(r.zero_factor_at),
            o_or_none(r.near_zero_at),
            r.terms
        ),
        Format::Json => format!("{}\n", r.to_json(digits)),
        Format::Csv => format!(
            "value_re,value_im,log_abs,phase,zero_factor_at,near_zero_at,terms\n{},{},{},{},{},{},{}\n",
            fmt_real(r.value.re, digits),
            fmt_real(r.value.im, digits),
            fmt_real(r.log_abs, digits),
            fmt_real(r.phase, digits),
            opt(r.zero_factor_at),
            opt(r.near_zero_at),
            r.terms
        ),
    }
}

fn o_or_none(o: Option<u64>) -> String {
    o.map_or("none".to_string(), |v| v.to_string())
}

fn report_output<T: Real>(r: &ErrorReport<T>, format: Format, digits: usize) -> String {
    match format {
        Format::Plain => format!("{}\n", r.to_plain(digits)),
        Format::Json => format!("{}\n", r.to_json(digits)),
        Format::Csv => format!("{}\n{}\n", ErrorReport::<T>::CSV_HEADER, r.to_csv_row(digits)),
    }
}

fn cmd_eval<T: Real>(
    target: &str,
    n: u64,
    pq: Option<(ComplexLiteral, ComplexLiteral)>,
    order: Option<usize>,
    format: Format,
    digits: usize,
) -> Outcome {
    let target = target.to_ascii_lowercase();
    if let Some(fam) = target.strip_prefix("expansion:") {
        let tag: FamilyTag = fam.parse().map_err(|e: Error| usage(e.to_string()))?;
        let order = order.ok_or_else(|| usage("expansions need --order"))?;
        let params = match (&pq, tag.needs_params()) {
            (Some(pq), true) => Some(to_pair::<T>(pq)?),
            (None, false) => None,
            (None, true) => return Err(usage(format!("{tag} needs --p and --q"))),
            (Some(_), false) => return Err(usage(format!("{tag} takes no (p, q)"))),
        };
        let family = ExpansionFamily::new(tag, order, params)?;
        if n == 0 {
            return Err(usage("--n must be at least 1"));
        }
        return Ok((report_output(&family.report(n)?, format, digits), 0));
    }
    if order.is_some() {
        return Err(usage("--order applies to expansion targets only"));
    }
    if target == "wallis" {
        if pq.is_some() {
            return Err(usage("wallis takes no (p, q)"));
        }
        let v: T = wallis_seq(n)?;
        let out = match format {
            Format::Plain => format!("{}\n", fmt_real(v, digits)),
            Format::Json => format!("{{\"n\":{n},\"value\":{}}}\n", json_real(v, digits)),
            Format::Csv => format!("n,value\n{n},{}\n", fmt_real(v, digits)),
        };
        return Ok((out, 0));
    }
    let f: fn(u64, Complex<T>, Complex<T>) -> wallis_core::Result<ProductResult<T>> = match target.as_str() {
        "wproduct" => w_product,
        "rproduct" => r_product,
        "wclosed" => w_closed,
        "rclosed" => r_closed,
        _ => {
            return Err(usage(format!(
                "unknown target {target:?}; expected wproduct, rproduct, wallis, wclosed, rclosed, expansion:<family>"
            )))
        }
    };
    let pq = pq.ok_or_else(|| usage(format!("{target} needs --p and --q")))?;
    let (p, q) = to_pair::<T>(&pq)?;
    Ok((product_output(&f(n, p, q)?, format, digits), 0))
}

fn cmd_verify(suite: &str, format: Format) -> Outcome {
    let suite: Suite = suite.parse().map_err(|e: Error| usage(e.to_string()))?;
    let checks = run_suite(suite);
    let code = if checks.iter().all(|c| c.passed) { 0 } else { 1 };
    let out = match format {
        Format::Plain => verify::to_plain(&checks),
        Format::Json => format!("{}\n", verify::to_json(&checks)),
        Format::Csv => verify::to_csv(&checks),
    };
    Ok((out, code))
}

fn cmd_constants(format: Format, digits: usize) -> String {
    let table = constants::<DoubleDouble>();
    match format {
        Format::Plain => table.iter().map(|(k, v)| format!("{k} {}\n", fmt_real(*v, digits))).collect(),
        Format::Json => {
            let body: Vec<String> = table.iter().map(|(k, v)| format!("\"{k}\":{}", json_real(*v, digits))).collect();
            format!("{{{}}}\n", body.join(","))
        }
        Format::Csv => {
            let rows: String = table.iter().map(|(k, v)| format!("{k},{}\n", fmt_real(*v, digits))).collect();
            format!("name,value\n{rows}")
        }
    }
}
