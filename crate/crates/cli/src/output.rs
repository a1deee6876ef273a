//! JSON, CSV and pretty rendering.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::{Map, Value as Json};

use qdc_core::verifier::{PointOutcome, SuiteReport};
use qdc_core::{BigRational, Error, IntegralResult, Value};

use crate::{Failure, Format};

/// One result, kept as JSON; CSV flattens its top-level fields.
pub struct Record {
    json: Json,
    pretty: String,
}

impl Record {
    pub fn value(v: &Value) -> Record {
        Record { json: to_json(v), pretty: v.to_string() }
    }

    pub fn rational(r: &BigRational) -> Record {
        let s = qdc_core::arith::rational_to_string(r);
        Record { json: Json::String(s.clone()), pretty: s }
    }

    pub fn integral(r: &IntegralResult) -> Record {
        let pretty = format!(
            "{} (valuation {}, levels {}, history {:?})",
            r.value, r.achieved_valuation, r.levels_used, r.history
        );
        Record { json: to_json(r), pretty }
    }
}

fn to_json<T: Serialize>(v: &T) -> Json {
    serde_json::to_value(v).expect("library values serialize")
}

/// Table cell for a value: rationals and residues as plain strings.
pub fn value_cell(v: &Value) -> String {
    match v {
        Value::Padic(z) => z.residue().to_string(),
        Value::Symbolic(f) => f.to_string(),
    }
}

fn cell(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Null => String::new(),
        other => other.to_string(),
    }
}

fn io_err(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("output: {e}"))
}

fn write_csv(header: &[String], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(header).map_err(io_err)?;
    for r in rows {
        w.write_record(r).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn emit(format: Format, rec: &Record) -> Result<(), Failure> {
    match format {
        Format::Json => println!("{}", rec.json),
        Format::Pretty => println!("{}", rec.pretty),
        Format::Csv => match &rec.json {
            Json::Object(m) => {
                let header: Vec<String> = m.keys().cloned().collect();
                write_csv(&header, &[m.values().map(cell).collect()])?;
            }
            other => write_csv(&["value".into()], &[vec![cell(other)]])?,
        },
    }
    Ok(())
}

pub fn emit_table(format: Format, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let header: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    match format {
        Format::Csv => write_csv(&header, rows),
        Format::Json => {
            let mut out = io::stdout().lock();
            for r in rows {
                let obj: Map<String, Json> =
                    header.iter().cloned().zip(r.iter().map(|c| Json::String(c.clone()))).collect();
                writeln!(out, "{}", Json::Object(obj)).map_err(io_err)?;
            }
            Ok(())
        }
        Format::Pretty => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
            };
            println!("{}", line(&header));
            for r in rows {
                println!("{}", line(r));
            }
            Ok(())
        }
    }
}

/// JSON lines with the summary on stderr, a CSV of reports, or the summary
/// alone.
pub fn emit_suite(format: Format, report: &SuiteReport) -> Result<(), Failure> {
    match format {
        Format::Json => {
            let mut out = io::stdout().lock();
            for o in &report.outcomes {
                writeln!(out, "{}", to_json(o)).map_err(io_err)?;
            }
            eprint!("{}", report.summary_table());
            Ok(())
        }
        Format::Pretty => {
            print!("{}", report.summary_table());
            Ok(())
        }
        Format::Csv => {
            let header: Vec<String> = ["identity_id", "parameters", "mode", "difference_valuation", "pass", "note"]
                .map(String::from)
                .to_vec();
            let rows: Vec<Vec<String>> = report.outcomes.iter().map(outcome_row).collect();
            write_csv(&header, &rows)
        }
    }
}

fn outcome_row(o: &PointOutcome) -> Vec<String> {
    let j = to_json(o);
    let params = j["parameters"]
        .as_object()
        .map(|m| m.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect::<Vec<_>>().join(";"))
        .unwrap_or_default();
    let (pass, note) = match o {
        PointOutcome::Report(r) => (r.pass.to_string(), r.side_condition.clone().unwrap_or_default()),
        PointOutcome::Skipped { skipped, .. } => ("skipped".into(), skipped.clone()),
        PointOutcome::Error { error, .. } => ("error".into(), error.clone()),
    };
    vec![cell(&j["identity_id"]), params, cell(&j["mode"]), cell(&j["difference_valuation"]), pass, note]
}

/// snake_case name of an error variant.
pub fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    let name = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("error");
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_uppercase() {
            if i > 0 {
                out.push('_');
            }
            out.extend(c.to_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}
