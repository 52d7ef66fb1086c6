//! Text rendering of results: CSV and Markdown.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limits::{BoundResult, Method, SandwichReport};
use crate::tables::TableArtifact;

pub const DEFAULT_DIGITS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(Error::config("format", format!("expected csv or md, got `{s}`"))),
        }
    }
}

/// `x` with `digits` significant digits, plain decimal for moderate
/// magnitudes and scientific notation otherwise.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // Round first so the exponent reflects the printed mantissa.
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci.split('e').nth(1).and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    } else {
        sci
    }
}

fn optional(x: Option<f64>, digits: usize) -> String {
    x.map(|v| format_sig(v, digits)).unwrap_or_default()
}

struct Grid {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Grid {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("write to memory");
                for r in &self.rows {
                    w.write_record(r).expect("write to memory");
                }
                String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 output")
            }
            Format::Markdown => {
                let mut out = String::new();
                let _ = writeln!(out, "| {} |", self.header.join(" | "));
                let _ = writeln!(out, "|{}", "---|".repeat(self.header.len()));
                for r in &self.rows {
                    let _ = writeln!(out, "| {} |", r.join(" | "));
                }
                out
            }
        }
    }
}

/// One result of a single computation.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub ell: u32,
    pub method: String,
    pub value: f64,
    pub optimal_param: Option<f64>,
    pub error_estimate: Option<f64>,
    pub wall_time: Option<f64>,
}

impl Record {
    pub fn from_bound(b: &BoundResult, wall_time: Option<f64>) -> Self {
        Record {
            ell: b.ell.ell(),
            method: b.method.name().to_string(),
            value: b.value,
            optimal_param: b.optimal_param,
            error_estimate: Some(b.error_estimate),
            wall_time,
        }
    }
}

pub fn render_records(records: &[Record], format: Format, digits: usize) -> String {
    let timed = records.iter().any(|r| r.wall_time.is_some());
    let mut header: Vec<String> = ["l", "method", "value", "optimal_param", "error_estimate"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if timed {
        header.push("wall_time_s".into());
    }
    let rows = records
        .iter()
        .map(|r| {
            let mut row = vec![
                r.ell.to_string(),
                r.method.clone(),
                format_sig(r.value, digits),
                optional(r.optimal_param, digits),
                optional(r.error_estimate, 3),
            ];
            if timed {
                row.push(optional(r.wall_time, 3));
            }
            row
        })
        .collect();
    Grid { header, rows }.render(format)
}

/// Column order of the wide sandwich report.
pub const SANDWICH_COLUMNS: [&str; 11] = [
    "l", "g_BS", "g_eq2", "g_B", "g_GGMT", "g_c_shoot", "g_c_nystrom", "g_New", "p*", "g_C1", "g_C2",
];

pub fn render_sandwich(reports: &[SandwichReport], format: Format, digits: usize) -> String {
    let value = |r: &SandwichReport, m: Method| optional(r.bound(m).map(|b| b.value), digits);
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.ell.ell().to_string(),
                value(r, Method::BargmannSchwinger),
                value(r, Method::SecondOrder),
                value(r, Method::ThirdOrder),
                value(r, Method::Ggmt),
                format_sig(r.g_shooting, digits),
                format_sig(r.g_nystrom, digits),
                value(r, Method::Variational),
                optional(r.bound(Method::Variational).and_then(|b| b.optimal_param), digits),
                value(r, Method::CalogeroI),
                value(r, Method::CalogeroII),
            ]
        })
        .collect();
    let header = SANDWICH_COLUMNS.iter().map(|s| s.to_string()).collect();
    Grid { header, rows }.render(format)
}

/// Table with a computed, printed and deviation column per printed column.
pub fn render_table(table: &TableArtifact, format: Format, digits: usize) -> String {
    let mut header = vec![table.id.label_name().to_string()];
    for c in &table.columns {
        header.push(c.label().to_string());
        header.push(format!("{}_printed", c.label()));
        header.push(format!("{}_dev", c.label()));
    }
    let rows = table
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![format!("{}", r.label)];
            for c in &r.cells {
                row.push(format_sig(c.computed, digits));
                row.push(format!("{}", c.printed));
                row.push(format!("{:.2e}", c.deviation()));
            }
            row
        })
        .collect();
    let mut out = Grid { header, rows }.render(format);
    if format == Format::Markdown {
        let _ = writeln!(out, "\n{}: {}", table.id, if table.pass { "pass" } else { "FAIL" });
    }
    out
}
