//! File formats: series as `n,re,im`, squarefree series as `mask,value`
//! under a `# primes=` header, sections as coordinate triples, and reports
//! as CSV plus a JSON sidecar.

use std::io::{BufRead, BufReader, Read, Write};

use dvl_core::experiments::{ExperimentReport, Value};
use dvl_core::operators::OperatorSection;
use dvl_core::series::{DirichletSeries, SquarefreeSeries};
use dvl_core::Complex64;
use serde_json::{json, Map};

use crate::error::{CliError, Result};

/// Fixed 17 significant digits, independent of locale.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_value(v: &Value) -> String {
    match v {
        Value::Int(i) => i.to_string(),
        Value::Real(x) => format_real(*x),
        Value::Bool(b) => b.to_string(),
        Value::Text(s) => s.clone(),
    }
}

fn parse_field<T: std::str::FromStr>(field: &str, what: &str, line: u64) -> Result<T> {
    field.trim().parse().map_err(|_| CliError::usage(format!("line {line}: bad {what} {field:?}")))
}

/// Reads `n,re,im` rows; `im` may be omitted and a leading header is skipped.
pub fn read_series<R: Read>(reader: R) -> Result<DirichletSeries> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).comment(Some(b'#')).from_reader(reader);
    let mut pairs: Vec<(u64, Complex64)> = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        if i == 0 && record.get(0).is_some_and(|f| f.trim() == "n") {
            continue;
        }
        if !(2..=3).contains(&record.len()) {
            return Err(CliError::usage(format!("line {line}: expected n,re[,im]")));
        }
        let n: u64 = parse_field(&record[0], "index", line)?;
        let re: f64 = parse_field(&record[1], "real part", line)?;
        let im: f64 = if record.len() == 3 { parse_field(&record[2], "imaginary part", line)? } else { 0.0 };
        if n == 0 {
            return Err(CliError::usage(format!("line {line}: indices start at 1")));
        }
        pairs.push((n, Complex64::new(re, im)));
    }
    pairs.sort_by_key(|&(n, _)| n);
    if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(CliError::usage(format!("index {} appears twice", w[0].0)));
    }
    let truncation = pairs.last().map_or(1, |&(n, _)| n);
    Ok(DirichletSeries::from_pairs(truncation, pairs)?)
}

pub fn write_series<W: Write>(f: &DirichletSeries, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["n", "re", "im"])?;
    for (n, c) in f.support() {
        w.write_record([n.to_string(), format_real(c.re), format_real(c.im)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_squarefree<W: Write>(f: &SquarefreeSeries, mut writer: W) -> Result<()> {
    let primes: Vec<String> = f.primes().iter().map(u64::to_string).collect();
    writeln!(writer, "# primes={}", primes.join(","))?;
    writeln!(writer, "mask,value")?;
    for (mask, &v) in f.coeffs().iter().enumerate() {
        if v != 0.0 {
            writeln!(writer, "{mask},{}", format_real(v))?;
        }
    }
    Ok(())
}

/// Inverse of [`write_squarefree`]; masks not listed are zero.
pub fn read_squarefree<R: Read>(reader: R) -> Result<SquarefreeSeries> {
    let mut reader = BufReader::new(reader);
    let mut header = String::new();
    reader.read_line(&mut header)?;
    let list = header
        .trim()
        .strip_prefix("# primes=")
        .ok_or_else(|| CliError::usage("squarefree file must start with '# primes='"))?;
    let primes: Vec<u64> = if list.is_empty() {
        Vec::new()
    } else {
        list.split(',').map(|p| parse_field(p, "prime", 1)).collect::<Result<_>>()?
    };
    if primes.len() > dvl_core::series::MAX_SQUAREFREE_PRIMES {
        return Err(CliError::usage("too many primes in squarefree header"));
    }
    let mut coeffs = vec![0.0; 1usize << primes.len()];
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() + 1);
        if record.len() != 2 {
            return Err(CliError::usage(format!("line {line}: expected mask,value")));
        }
        let mask: usize = parse_field(&record[0], "mask", line)?;
        let slot = coeffs.get_mut(mask).ok_or_else(|| CliError::usage(format!("line {line}: mask out of range")))?;
        *slot = parse_field(&record[1], "value", line)?;
    }
    Ok(SquarefreeSeries::new(primes, coeffs)?)
}

/// `m n value` per nonzero entry, or `m n re im` when any entry is complex.
pub fn write_coordinates<W: Write>(section: &OperatorSection, mut writer: W) -> Result<()> {
    let complex = section.entries().any(|(_, _, v)| v.im != 0.0);
    for (m, n, v) in section.entries() {
        if complex {
            writeln!(writer, "{m} {n} {} {}", format_real(v.re), format_real(v.im))?;
        } else {
            writeln!(writer, "{m} {n} {}", format_real(v.re))?;
        }
    }
    Ok(())
}

pub fn write_report_csv<W: Write>(report: &ExperimentReport, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(&report.columns)?;
    for row in &report.rows {
        w.write_record(row.iter().map(format_value))?;
    }
    w.flush()?;
    Ok(())
}

/// JSON sidecar: report parameters, metadata and checks, merged with `run`.
pub fn report_json(report: &ExperimentReport, run: Map<String, serde_json::Value>) -> serde_json::Value {
    let pairs = |kv: &[(String, String)]| -> Map<String, serde_json::Value> {
        kv.iter().map(|(k, v)| (k.clone(), json!(v))).collect()
    };
    let checks: Vec<serde_json::Value> = report
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    json!({
        "experiment": report.name,
        "parameters": pairs(&report.parameters),
        "metadata": pairs(&report.metadata),
        "run": run,
        "rows": report.rows.len(),
        "checks": checks,
        "all_checks_pass": report.all_checks_pass(),
    })
}
