use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational, sign, to_sig_string, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Nu,
    Mu,
    Omega,
    AlphaBeta,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Nu => "NU",
            Self::Mu => "MU",
            Self::Omega => "OMEGA",
            Self::AlphaBeta => "ALPHA_BETA",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "NU" => Ok(Self::Nu),
            "MU" => Ok(Self::Mu),
            "OMEGA" => Ok(Self::Omega),
            "ALPHA_BETA" | "ALPHABETA" => Ok(Self::AlphaBeta),
            _ => Err(Error::Parse(format!("unknown coefficient family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesValues {
    Single(Vec<Rational>),
    Pairs(Vec<(Rational, Rational)>),
}

/// An exact coefficient list; `values[k]` is the coefficient of index `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Wire", into = "Wire")]
pub struct CoeffSeries {
    family: Family,
    values: SeriesValues,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    family: Family,
    order: usize,
    values: WireValues,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireValues {
    Single(Vec<String>),
    Pairs(Vec<(String, String)>),
}

impl From<CoeffSeries> for Wire {
    fn from(s: CoeffSeries) -> Self {
        let order = s.order();
        let values = match s.values {
            SeriesValues::Single(v) => WireValues::Single(v.iter().map(format_rational).collect()),
            SeriesValues::Pairs(v) => WireValues::Pairs(
                v.iter()
                    .map(|(a, b)| (format_rational(a), format_rational(b)))
                    .collect(),
            ),
        };
        Wire { family: s.family, order, values }
    }
}

impl TryFrom<Wire> for CoeffSeries {
    type Error = Error;
    fn try_from(w: Wire) -> Result<Self> {
        let values = match (w.family, w.values) {
            (Family::AlphaBeta, WireValues::Pairs(v)) => SeriesValues::Pairs(
                v.iter()
                    .map(|(a, b)| Ok((parse_rational(a)?, parse_rational(b)?)))
                    .collect::<Result<_>>()?,
            ),
            (Family::AlphaBeta, WireValues::Single(v)) if v.is_empty() => SeriesValues::Pairs(vec![]),
            (f, WireValues::Single(v)) if f != Family::AlphaBeta => {
                SeriesValues::Single(v.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?)
            }
            (f, _) => return Err(Error::Parse(format!("value shape does not match family {f}"))),
        };
        let s = CoeffSeries { family: w.family, values };
        if s.order() != w.order {
            return Err(Error::Parse(format!("order {} but {} values", w.order, s.order())));
        }
        Ok(s)
    }
}

impl CoeffSeries {
    /// # Panics
    /// If `family` is [`Family::AlphaBeta`].
    pub fn single(family: Family, values: Vec<Rational>) -> Self {
        assert!(family != Family::AlphaBeta, "ALPHA_BETA holds pairs");
        Self { family, values: SeriesValues::Single(values) }
    }

    pub fn pairs(values: Vec<(Rational, Rational)>) -> Self {
        Self { family: Family::AlphaBeta, values: SeriesValues::Pairs(values) }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        match &self.values {
            SeriesValues::Single(v) => v.len(),
            SeriesValues::Pairs(v) => v.len(),
        }
    }

    pub fn values(&self) -> &SeriesValues {
        &self.values
    }

    /// # Panics
    /// On an `ALPHA_BETA` series.
    pub fn singles(&self) -> &[Rational] {
        match &self.values {
            SeriesValues::Single(v) => v,
            SeriesValues::Pairs(_) => panic!("ALPHA_BETA series holds pairs"),
        }
    }

    /// # Panics
    /// On a series that is not `ALPHA_BETA`.
    pub fn pairs_ref(&self) -> &[(Rational, Rational)] {
        match &self.values {
            SeriesValues::Pairs(v) => v,
            SeriesValues::Single(_) => panic!("only ALPHA_BETA holds pairs"),
        }
    }

    /// Signs as a string of `+`, `-`, `0`; pairs report `alpha`'s sign.
    pub fn sign_pattern(&self) -> String {
        let ch = |r: &Rational| match sign(r) {
            1 => '+',
            -1 => '-',
            _ => '0',
        };
        match &self.values {
            SeriesValues::Single(v) => v.iter().map(ch).collect(),
            SeriesValues::Pairs(v) => v.iter().map(|(a, _)| ch(a)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Header plus one row per index; a decimal column is added when
    /// `digits` is given.
    pub fn to_csv(&self, digits: Option<usize>) -> String {
        let mut out = String::new();
        match &self.values {
            SeriesValues::Single(v) => {
                out.push_str("index,value");
                if digits.is_some() {
                    out.push_str(",decimal");
                }
                out.push('\n');
                for (k, r) in v.iter().enumerate() {
                    out.push_str(&format!("{},{}", k + 1, format_rational(r)));
                    if let Some(d) = digits {
                        out.push_str(&format!(",{}", to_sig_string(r, d)));
                    }
                    out.push('\n');
                }
            }
            SeriesValues::Pairs(v) => {
                out.push_str("index,alpha,beta");
                if digits.is_some() {
                    out.push_str(",alpha_decimal,beta_decimal");
                }
                out.push('\n');
                for (k, (a, b)) in v.iter().enumerate() {
                    out.push_str(&format!("{},{},{}", k + 1, format_rational(a), format_rational(b)));
                    if let Some(d) = digits {
                        out.push_str(&format!(",{},{}", to_sig_string(a, d), to_sig_string(b, d)));
                    }
                    out.push('\n');
                }
            }
        }
        out
    }

    /// One `index, value` line per coefficient; pairs print as `(alpha, beta)`.
    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        match &self.values {
            SeriesValues::Single(v) => {
                for (k, r) in v.iter().enumerate() {
                    out.push_str(&format!("{}, {}\n", k + 1, format_rational(r)));
                }
            }
            SeriesValues::Pairs(v) => {
                for (k, (a, b)) in v.iter().enumerate() {
                    out.push_str(&format!("{}, ({}, {})\n", k + 1, format_rational(a), format_rational(b)));
                }
            }
        }
        out
    }
}
