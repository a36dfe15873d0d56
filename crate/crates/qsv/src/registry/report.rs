//! Report serialization shared by the CLI and the acceptance harness.
//!
//! Every number is an exact string. With `timing` off the output depends
//! only on the selected checks and the order, never on thread count.

use super::{CheckReport, DifferenceReport, SuiteReport};
use serde::Serialize;
use std::io::{self, Write};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (text, json, csv)")),
        }
    }
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    id: &'a str,
    anchor: &'a str,
    status: &'a str,
    verified_order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_difference: Option<&'a DifferenceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<u64>,
}

#[derive(Serialize)]
struct JsonSummary {
    pass: usize,
    fail: usize,
    skipped: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    suite: &'a str,
    order: &'a str,
    checks: Vec<JsonCheck<'a>>,
    summary: JsonSummary,
}

#[derive(Serialize)]
struct CsvCheck<'a> {
    id: &'a str,
    anchor: &'a str,
    status: &'a str,
    verified_order: String,
    e_q: &'a str,
    e_z: &'a str,
    lhs: &'a str,
    rhs: &'a str,
    reason: &'a str,
    wall_time_ms: String,
}

fn json_check(r: &CheckReport, timing: bool) -> JsonCheck<'_> {
    JsonCheck {
        id: &r.id,
        anchor: &r.anchor,
        status: r.status.as_str(),
        verified_order: r.verified_order.to_string(),
        first_difference: r.first_difference.as_ref(),
        reason: r.reason.as_deref(),
        wall_time_ms: timing.then_some(r.wall_time_ms),
    }
}

/// Writes `rep` in `format`. `order` labels the run ("default" when each
/// check used its own order).
pub fn write_report(
    out: &mut dyn Write,
    rep: &SuiteReport,
    suite: &str,
    order: &str,
    format: Format,
    timing: bool,
) -> io::Result<()> {
    match format {
        Format::Json => {
            let s = &rep.summary;
            let doc = JsonReport {
                suite,
                order,
                checks: rep.checks.iter().map(|r| json_check(r, timing)).collect(),
                summary: JsonSummary { pass: s.pass, fail: s.fail, skipped: s.skipped },
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rep.checks {
                let d = r.first_difference.as_ref();
                w.serialize(CsvCheck {
                    id: &r.id,
                    anchor: &r.anchor,
                    status: r.status.as_str(),
                    verified_order: r.verified_order.to_string(),
                    e_q: d.map_or("", |d| &d.e_q),
                    e_z: d.map_or("", |d| &d.e_z),
                    lhs: d.map_or("", |d| &d.lhs),
                    rhs: d.map_or("", |d| &d.rhs),
                    reason: r.reason.as_deref().unwrap_or(""),
                    wall_time_ms: if timing { r.wall_time_ms.to_string() } else { String::new() },
                })?;
            }
            w.flush()
        }
        Format::Text => {
            for r in &rep.checks {
                let mut line =
                    format!("{:<7} {}  [{}]  order {}", r.status.as_str().to_uppercase(), r.id, r.anchor, r.verified_order);
                if let Some(d) = &r.first_difference {
                    line += &format!("  first difference at q^{} z^{}: {} vs {}", d.e_q, d.e_z, d.lhs, d.rhs);
                }
                if let Some(reason) = &r.reason {
                    line += &format!("  ({reason})");
                }
                if timing {
                    line += &format!("  {} ms", r.wall_time_ms);
                }
                writeln!(out, "{line}")?;
            }
            let s = &rep.summary;
            writeln!(out, "pass {}  fail {}  skipped {}", s.pass, s.fail, s.skipped)
        }
    }
}

/// Writes a list of plain records (`text` renders each with `line`).
pub fn write_rows<T: Serialize>(
    out: &mut dyn Write,
    format: Format,
    rows: &[T],
    line: impl Fn(&T) -> String,
) -> io::Result<()> {
    match format {
        Format::Text => {
            for r in rows {
                writeln!(out, "{}", line(r))?;
            }
            Ok(())
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()
        }
    }
}

/// The canonical (timing-free) JSON rendering used for determinism checks.
pub fn canonical_json(rep: &SuiteReport, suite: &str, order: &str) -> String {
    let mut buf = Vec::new();
    write_report(&mut buf, rep, suite, order, Format::Json, false).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
