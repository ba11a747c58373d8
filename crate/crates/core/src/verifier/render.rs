//! CSV, JSON and text-table reports. Output depends only on the records.

use std::fmt::Write as _;

use serde::Serialize;

use super::chains::ChainReport;
use super::config::Format;
use super::record::VerificationRecord;
use super::sweep::SweepResult;
use super::VerifierError;

const COLUMNS: [&str; 28] = [
    "index",
    "line",
    "spec",
    "status",
    "skip_reason",
    "n",
    "order",
    "transitive",
    "b",
    "b_kind",
    "b_lower",
    "b_greedy",
    "mu",
    "mu_kind",
    "mu_method",
    "witness_support",
    "witness_expected",
    "product",
    "n_log_n",
    "thm1_margin",
    "thm1",
    "thm2_margin",
    "thm2",
    "thm2_exemption",
    "lower_bound",
    "formula",
    "expected_exception",
    "note",
];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

fn real(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_default()
}

fn method(r: &VerificationRecord) -> String {
    r.mu_method
        .as_ref()
        .and_then(|m| serde_json::to_value(m).ok())
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn row(r: &VerificationRecord) -> [String; 28] {
    [
        r.index.to_string(),
        r.line.to_string(),
        r.spec.clone(),
        if r.skipped.is_some() { "skipped" } else { "checked" }.into(),
        opt(&r.skipped),
        opt(&r.n),
        opt(&r.order),
        opt(&r.transitive),
        opt(&r.b),
        r.b_kind.to_string(),
        opt(&r.b_lower),
        opt(&r.b_greedy),
        opt(&r.mu),
        r.mu_kind.to_string(),
        method(r),
        opt(&r.witness_support),
        opt(&r.witness_expected),
        opt(&r.product),
        real(r.n_log_n),
        real(r.thm1_margin),
        r.thm1.to_string(),
        real(r.thm2_margin),
        r.thm2.to_string(),
        opt(&r.thm2_exemption),
        r.lower_bound.to_string(),
        r.formula.to_string(),
        r.expected_exception.to_string(),
        opt(&r.note),
    ]
}

/// Header plus one row per record.
pub fn to_csv(records: &[VerificationRecord]) -> Result<String, VerifierError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS)?;
    for r in records {
        w.write_record(row(r))?;
    }
    let bytes = w.into_inner().map_err(|e| VerifierError::Render(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| VerifierError::Render(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, VerifierError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| VerifierError::Render(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<String>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.iter().map(|h| h.to_string()).collect(), &mut out);
    line(widths.iter().map(|&w| "-".repeat(w)).collect(), &mut out);
    for r in rows {
        line(r.clone(), &mut out);
    }
    out
}

pub fn chains_table(report: &ChainReport) -> String {
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.to_string(),
                if c.holds() { "PASS" } else { "FAIL" }.to_string(),
                c.samples.to_string(),
                c.violations.to_string(),
                c.claim.to_string(),
                c.examples.join("; "),
            ]
        })
        .collect();
    table(&["check", "result", "samples", "violations", "claim", "first violations"], &rows)
}

pub fn sweep_table(result: &SweepResult) -> String {
    let rows: Vec<Vec<String>> = result
        .records
        .iter()
        .map(|r| {
            let kind = |v: &Option<usize>, k: super::record::ValueKind| match (v, k) {
                (Some(v), super::record::ValueKind::Exact) => v.to_string(),
                (Some(v), _) => format!("<={v}"),
                (None, _) => String::new(),
            };
            let mut note = r.skipped.clone().or_else(|| r.note.clone()).unwrap_or_default();
            if r.expected_exception {
                note = "known exception".into();
            }
            vec![
                r.spec.clone(),
                opt(&r.n),
                kind(&r.b, r.b_kind),
                kind(&r.mu, r.mu_kind),
                opt(&r.product),
                r.n_log_n.map(|v| format!("{v:.2}")).unwrap_or_default(),
                r.thm1.to_string(),
                r.thm2_margin.map(|v| format!("{v:.2}")).unwrap_or_default(),
                r.thm2.to_string(),
                note,
            ]
        })
        .collect();
    let mut out = format!("# {}\n", result.scope);
    out.push_str(&table(
        &["spec", "n", "b", "mu", "b*mu", "n log n", "thm1", "thm2 margin", "thm2", "note"],
        &rows,
    ));
    if let Some(c) = &result.chains {
        out.push('\n');
        out.push_str(&chains_table(c));
    }
    let _ = writeln!(out, "\n{}\n{}", result.summary.line(), result.summary.detail_line());
    out
}

pub fn render(result: &SweepResult, format: Format) -> Result<String, VerifierError> {
    match format {
        Format::Csv => to_csv(&result.records),
        Format::Json => to_json(result),
        Format::Table => Ok(sweep_table(result)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_csv_is_header_only() {
        let s = to_csv(&[]).unwrap();
        assert_eq!(s.lines().count(), 1);
        assert!(s.starts_with("index,line,spec,status"));
    }

    #[test]
    fn skipped_row_has_every_column() {
        let r = VerificationRecord::skipped(0, 3, "Affine(d=2,q=6)".into(), "unsupported q, \"6\"".into());
        let s = to_csv(&[r]).unwrap();
        let mut rd = csv::Reader::from_reader(s.as_bytes());
        let rec = rd.records().next().unwrap().unwrap();
        assert_eq!(rec.len(), COLUMNS.len());
        assert_eq!(&rec[4], "unsupported q, \"6\"");
    }
}
