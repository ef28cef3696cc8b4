//! Text renderings of term lists.
//!
//! The convolution side prints `T^left f * T^right g`, the symbol side
//! prints `D^left f # D^right g`; coefficients are identical. Output is
//! deterministic and used for golden files.

use std::fmt;
use std::str::FromStr;

use num::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::leibniz::{LeibnizTerm, NFoldTerm};
use crate::multiindex::MultiIndex;
use crate::rational::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Convolution,
    Symbol,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Latex,
}

impl Side {
    fn op(self) -> &'static str {
        match self {
            Side::Convolution => "T",
            Side::Symbol => "D",
        }
    }

    fn product(self) -> &'static str {
        match self {
            Side::Convolution => "*",
            Side::Symbol => "\\#",
        }
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convolution" => Ok(Side::Convolution),
            "symbol" => Ok(Side::Symbol),
            _ => Err(Error::Schema(format!("unknown side {s:?}, expected convolution or symbol"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Convolution => "convolution",
            Side::Symbol => "symbol",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            "latex" => Ok(Format::Latex),
            _ => Err(Error::Schema(format!("unknown format {s:?}, expected json, table or latex"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Table => "table",
            Format::Latex => "latex",
        })
    }
}

#[derive(Serialize)]
struct TermRecord<'a> {
    left: &'a [u32],
    right: &'a [u32],
    coeff: String,
}

#[derive(Serialize)]
struct TermFile<'a, T> {
    alpha: &'a [u32],
    side: Side,
    terms: Vec<T>,
}

#[derive(Serialize)]
struct NFoldRecord<'a> {
    factors: Vec<&'a [u32]>,
    coeff: String,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("term list serializes");
    s.push('\n');
    s
}

/// `T_{1}T_{3}^{2}`, empty for the zero multiindex.
fn latex_operator(side: Side, m: &MultiIndex) -> String {
    let mut s = String::new();
    for (i, &e) in m.as_slice().iter().enumerate() {
        match e {
            0 => {}
            1 => s.push_str(&format!("{}_{{{}}}", side.op(), i + 1)),
            _ => s.push_str(&format!("{}_{{{}}}^{{{}}}", side.op(), i + 1, e)),
        }
    }
    s
}

fn latex_coeff(c: &Rational) -> String {
    let abs = c.abs();
    if abs.is_one() {
        String::new()
    } else if abs.is_integer() {
        format!("{} ", abs.numer())
    } else {
        format!("\\frac{{{}}}{{{}}} ", abs.numer(), abs.denom())
    }
}

fn latex_sum<'a>(lhs: String, terms: impl Iterator<Item = (&'a Rational, String)>) -> String {
    let mut out = lhs;
    out.push_str(" =");
    for (n, (c, body)) in terms.enumerate() {
        let sign = match (n, c.is_negative()) {
            (0, false) => " ",
            (0, true) => " -",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        out.push_str(sign);
        out.push_str(&latex_coeff(c));
        out.push_str(&body);
    }
    out.push('\n');
    out
}

fn table(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&header);
    for r in &rows {
        out.push_str(&line(r));
    }
    out
}

/// Renders a two-factor term list for `T^α(f * g)` or `D^α(f # g)`.
/// An empty list renders as the empty string in text formats.
pub fn render_terms(alpha: &MultiIndex, terms: &[LeibnizTerm], side: Side, format: Format) -> String {
    match format {
        Format::Json => to_json(&TermFile {
            alpha: alpha.as_slice(),
            side,
            terms: terms
                .iter()
                .map(|t| TermRecord {
                    left: t.left.as_slice(),
                    right: t.right.as_slice(),
                    coeff: format_rational(&t.coeff),
                })
                .collect(),
        }),
        _ if terms.is_empty() => String::new(),
        Format::Table => table(
            vec!["coeff".into(), "left".into(), "right".into()],
            terms
                .iter()
                .map(|t| vec![format_rational(&t.coeff), format!("({})", t.left), format!("({})", t.right)])
                .collect(),
        ),
        Format::Latex => {
            let p = side.product();
            let lhs = format!("{}(f {p} g)", latex_operator(side, alpha));
            latex_sum(
                lhs,
                terms.iter().map(|t| {
                    let body = format!("{}f {p} {}g", latex_operator(side, &t.left), latex_operator(side, &t.right));
                    (&t.coeff, body)
                }),
            )
        }
    }
}

/// Renders an n-fold term list; functions are named `f_{1} .. f_{n}`.
pub fn render_nfold_terms(alpha: &MultiIndex, terms: &[NFoldTerm], side: Side, format: Format) -> String {
    match format {
        Format::Json => to_json(&TermFile {
            alpha: alpha.as_slice(),
            side,
            terms: terms
                .iter()
                .map(|t| NFoldRecord {
                    factors: t.factors.iter().map(MultiIndex::as_slice).collect(),
                    coeff: format_rational(&t.coeff),
                })
                .collect(),
        }),
        _ if terms.is_empty() => String::new(),
        Format::Table => {
            let n = terms[0].factors.len();
            let mut header = vec!["coeff".to_string()];
            header.extend((1..=n).map(|m| format!("f{m}")));
            let rows = terms
                .iter()
                .map(|t| {
                    let mut row = vec![format_rational(&t.coeff)];
                    row.extend(t.factors.iter().map(|f| format!("({f})")));
                    row
                })
                .collect();
            table(header, rows)
        }
        Format::Latex => {
            let n = terms[0].factors.len();
            let p = format!(" {} ", side.product());
            let fs: Vec<String> = (1..=n).map(|m| format!("f_{{{m}}}")).collect();
            let lhs = format!("{}({})", latex_operator(side, alpha), fs.join(&p));
            latex_sum(
                lhs,
                terms.iter().map(|t| {
                    let parts: Vec<String> =
                        t.factors.iter().zip(&fs).map(|(m, f)| format!("{}{f}", latex_operator(side, m))).collect();
                    (&t.coeff, parts.join(&p))
                }),
            )
        }
    }
}
