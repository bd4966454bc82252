//! CSV and JSON renderings of decompositions, bounds, sweeps and spectra.
//!
//! CSV: header row, comma separated, LF line endings, reals with 12
//! significant digits. JSON: pretty printed, keys in declaration order,
//! rational weights as `numerator` / `denominator`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{BoundResult, SweepTable};
use crate::error::{Error, Result};
use crate::lattice::{LatticeSpec, Model, ModelParams};
use crate::models::{Accounting, SiteTermGroup};
use crate::poly::Polynomial;
use crate::spectra::OverlapRun;
use crate::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParams(format!("unknown format `{other}`"))),
        }
    }
}

/// Decimal with at most `digits` significant digits, trailing zeros dropped.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn sig(x: f64) -> String {
    format_sig(x, 12)
}

/// One monomial `numerator/denominator t^a U^b J^c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialRecord {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub numerator: i64,
    pub denominator: i64,
}

pub fn polynomial_records(p: &Polynomial<Rational>) -> Vec<MonomialRecord> {
    p.iter()
        .map(|(m, q)| MonomialRecord {
            a: m.t,
            b: m.u,
            c: m.j,
            numerator: *q.numer(),
            denominator: *q.denom(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermRecord {
    pub site_row: usize,
    pub site_col: usize,
    pub source: String,
    pub pauli: String,
    pub sparse: String,
    pub coefficient: String,
    pub terms: Vec<MonomialRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub model: Model,
    pub lattice: String,
    pub accounting: String,
    pub n_qubits: usize,
    pub rows: Vec<TermRecord>,
}

pub fn decomposition_report(
    model: Model,
    lattice: &LatticeSpec,
    accounting: Accounting,
    groups: &[SiteTermGroup],
) -> DecompositionReport {
    let rows = groups
        .iter()
        .flat_map(|g| {
            g.terms.iter().zip(&g.sources).map(move |(t, s)| TermRecord {
                site_row: g.site.0,
                site_col: g.site.1,
                source: s.to_string(),
                pauli: t.pauli.label(),
                sparse: t.pauli.sparse_label(),
                coefficient: t.coefficient.to_string(),
                terms: polynomial_records(&t.coefficient),
            })
        })
        .collect();
    DecompositionReport {
        model,
        lattice: lattice.to_string(),
        accounting: match accounting {
            Accounting::Literal => "literal".into(),
            Accounting::Complete => "complete".into(),
        },
        n_qubits: groups.iter().find_map(|g| g.n_qubits()).unwrap_or(0),
        rows,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRecord {
    pub method: String,
    pub model: Option<Model>,
    pub lattice: Option<String>,
    pub polynomial: String,
    pub terms: Vec<MonomialRecord>,
    /// `r epsilon / tau^2`.
    pub value: f64,
    pub r: f64,
}

pub fn bound_record(b: &BoundResult, params: &ModelParams) -> BoundRecord {
    BoundRecord {
        method: b.method.to_string(),
        model: b.model,
        lattice: b.lattice.map(|l| l.to_string()),
        polynomial: b.polynomial.to_string(),
        terms: polynomial_records(&b.polynomial),
        value: b.value(params),
        r: b.numeric_r(params),
    }
}

fn csv_err(e: impl fmt::Display) -> Error {
    Error::Output(e.to_string())
}

fn write_csv<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>()).map_err(csv_err)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_err)?).map_err(csv_err)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(csv_err)?;
    s.push('\n');
    Ok(s)
}

impl DecompositionReport {
    pub fn to_csv(&self) -> Result<String> {
        write_csv(
            &["site_row", "site_col", "source", "pauli", "sparse", "coefficient"],
            self.rows.iter().map(|r| {
                [
                    r.site_row.to_string(),
                    r.site_col.to_string(),
                    r.source.clone(),
                    r.pauli.clone(),
                    r.sparse.clone(),
                    r.coefficient.clone(),
                ]
            }),
        )
    }
}

pub fn bounds_csv(records: &[BoundRecord]) -> Result<String> {
    write_csv(
        &["method", "model", "lattice", "polynomial", "value", "r"],
        records.iter().map(|b| {
            [
                b.method.clone(),
                b.model.map(|m| m.to_string()).unwrap_or_default(),
                b.lattice.clone().unwrap_or_default(),
                b.polynomial.clone(),
                sig(b.value),
                sig(b.r),
            ]
        }),
    )
}

/// Sweep output: one column per curve.
pub fn sweep_csv(table: &SweepTable) -> Result<String> {
    let mut header = vec![table.variable.as_str()];
    header.extend(table.curves.iter().map(|c| c.name.as_str()));
    write_csv(
        &header,
        table.values.iter().enumerate().map(|(i, v)| {
            std::iter::once(sig(*v))
                .chain(table.curves.iter().map(move |c| sig(c.values[i])))
                .collect::<Vec<_>>()
        }),
    )
}

/// `index,eigenvalue`.
pub fn spectrum_csv(levels: &[f64]) -> Result<String> {
    write_csv(
        &["index", "eigenvalue"],
        levels.iter().enumerate().map(|(i, e)| [i.to_string(), sig(*e)]),
    )
}

/// `index,hubbard,tj`, both shifted so their ground state is zero.
pub fn overlap_csv(run: &OverlapRun) -> Result<String> {
    let (h0, j0) = (run.hubbard[0], run.tj[0]);
    write_csv(
        &["index", "hubbard", "tj"],
        run.tj
            .iter()
            .zip(&run.hubbard)
            .enumerate()
            .map(|(i, (j, h))| [i.to_string(), sig(h - h0), sig(j - j0)]),
    )
}
