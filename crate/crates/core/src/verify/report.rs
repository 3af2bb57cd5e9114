use std::io::Write;
use std::path::Path;

use serde::Serializer;

use super::Report;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

/// Floats go out as full-precision scientific strings so the JSON is stable
/// across serializers.
pub(super) fn sci_opt<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&sci(*x)),
        None => s.serialize_none(),
    }
}

fn sci(x: f64) -> String {
    format!("{x:e}")
}

fn runtime(ms: f64) -> String {
    format!("{ms:.3}")
}

pub fn render(r: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(r)? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "status", "lhs", "rhs", "abs_error", "runtime_ms"])?;
            for c in &r.cases {
                let err = c.abs_error.map(sci).unwrap_or_default();
                w.write_record([
                    c.id.as_str(),
                    &c.status.to_string(),
                    c.lhs.as_str(),
                    c.rhs.as_str(),
                    err.as_str(),
                    &runtime(c.runtime_ms),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Pretty => Ok(pretty(r)),
    }
}

fn pretty(r: &Report) -> String {
    let rows: Vec<[String; 5]> = r
        .cases
        .iter()
        .map(|c| {
            [
                c.id.clone(),
                c.status.to_string(),
                c.abs_error.map(|e| format!("{e:.2e}")).unwrap_or_else(|| "-".into()),
                format!("{} ms", runtime(c.runtime_ms)),
                match &c.detail {
                    Some(d) if c.lhs.is_empty() => d.clone(),
                    Some(d) => format!("{} vs {} ({d})", c.lhs, c.rhs),
                    None => format!("{} vs {}", c.lhs, c.rhs),
                },
            ]
        })
        .collect();
    let header = ["id", "status", "abs_error", "runtime", "lhs vs rhs"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: [&str; 5], out: &mut String| {
        for (i, cell) in cells.iter().enumerate() {
            if i == 4 {
                out.push_str(cell);
            } else {
                out.push_str(&format!("{:<w$}  ", cell, w = widths[i]));
            }
        }
        out.push('\n');
    };
    line(header, &mut out);
    for row in &rows {
        line([&row[0], &row[1], &row[2], &row[3], &row[4]], &mut out);
    }
    let t = &r.totals;
    out.push_str(&format!(
        "\n{} cases: {} pass, {} fail, {} reported\n",
        t.count, t.pass, t.fail, t.reported
    ));
    out
}

/// Writes the report to `path`, or standard output when `None`.
pub fn emit_report(r: &Report, format: Format, path: Option<&Path>) -> Result<()> {
    let text = render(r, format)?;
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
