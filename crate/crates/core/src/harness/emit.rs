//! Report serialization: CSV, JSON, and a human-readable table.
//!
//! Rows are already sorted (ascending n, then descriptor string) when the
//! report is finalized, so emission is byte-stable for identical inputs.
//! CSV and JSON carry the exact numerator/denominator columns; the plain
//! format adds a 6-significant-digit decimal for reading convenience.

use num::ToPrimitive;
use serde::Serialize;

use super::{Relation, ReportRow, VerificationReport};
use crate::arith::ExactRatio;

fn ratio_parts(ratio: &ExactRatio) -> (u64, u64) {
    let num = ratio.numerator().to_u64().expect("report ratios fit in u64");
    let den = ratio.denominator().to_u64().expect("report ratios fit in u64");
    (num, den)
}

/// CSV with the fixed column set
/// `n,tier,descriptor,psi,psi_cyclic,ratio_num,ratio_den,bound_num,bound_den,relation,structure_ok`.
pub fn report_to_csv(report: &VerificationReport) -> String {
    let mut out = String::from(
        "n,tier,descriptor,psi,psi_cyclic,ratio_num,ratio_den,bound_num,bound_den,relation,structure_ok\n",
    );
    for row in &report.rows {
        let (rn, rd) = ratio_parts(&row.ratio);
        let (bn, bd) = ratio_parts(&row.bound);
        let structure = match row.structure_ok {
            None => "",
            Some(true) => "true",
            Some(false) => "false",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            row.n,
            row.tier,
            row.descriptor,
            row.psi,
            row.psi_cyclic,
            rn,
            rd,
            bn,
            bd,
            row.relation,
            structure,
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonRow<'a> {
    n: u64,
    tier: String,
    descriptor: &'a str,
    psi: u64,
    psi_cyclic: u64,
    ratio_num: u64,
    ratio_den: u64,
    bound_num: u64,
    bound_den: u64,
    relation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    structure_ok: Option<bool>,
}

#[derive(Serialize)]
struct JsonSummary<'a> {
    theorem: &'a str,
    n_max: u64,
    pass: bool,
    row_count: usize,
    violation_count: usize,
    equality_orders: Vec<u64>,
    notes: &'a [String],
}

#[derive(Serialize)]
struct JsonReport<'a> {
    rows: Vec<JsonRow<'a>>,
    summary: JsonSummary<'a>,
}

/// JSON: one object per row plus a summary object.
pub fn report_to_json(report: &VerificationReport) -> String {
    let rows: Vec<JsonRow<'_>> = report
        .rows
        .iter()
        .map(|row| {
            let (rn, rd) = ratio_parts(&row.ratio);
            let (bn, bd) = ratio_parts(&row.bound);
            JsonRow {
                n: row.n,
                tier: row.tier.to_string(),
                descriptor: &row.descriptor,
                psi: row.psi,
                psi_cyclic: row.psi_cyclic,
                ratio_num: rn,
                ratio_den: rd,
                bound_num: bn,
                bound_den: bd,
                relation: row.relation.to_string(),
                structure_ok: row.structure_ok,
            }
        })
        .collect();
    let mut equality_orders: Vec<u64> = report
        .rows
        .iter()
        .filter(|r| r.relation == Relation::Equal)
        .map(|r| r.n)
        .collect();
    equality_orders.dedup();
    let summary = JsonSummary {
        theorem: &report.theorem,
        n_max: report.n_max,
        pass: report.pass,
        row_count: report.rows.len(),
        violation_count: report.violations(),
        equality_orders,
        notes: &report.notes,
    };
    serde_json::to_string_pretty(&JsonReport { rows, summary })
        .expect("report serialization cannot fail")
}

fn plain_row(row: &ReportRow) -> String {
    let structure = match row.structure_ok {
        None => "-".to_string(),
        Some(true) => "ok".to_string(),
        Some(false) => "FAIL".to_string(),
    };
    format!(
        "{:<6} {:<10} {:<28} {:>10} {:>10}  {} ({})  vs {}  {:<9} {}",
        row.n,
        row.tier.to_string(),
        row.descriptor,
        row.psi,
        row.psi_cyclic,
        row.ratio,
        row.ratio.to_decimal(6),
        row.bound,
        row.relation.to_string(),
        structure,
    )
}

/// Human-readable table with a trailing summary line.
pub fn report_to_plain(report: &VerificationReport) -> String {
    let mut out = format!("theorem {}  max-n {}\n", report.theorem, report.n_max);
    out.push_str(&format!(
        "{:<6} {:<10} {:<28} {:>10} {:>10}  ratio (decimal)  vs bound  relation  structure\n",
        "n", "tier", "descriptor", "psi", "psi_cyclic",
    ));
    for row in &report.rows {
        out.push_str(&plain_row(row));
        out.push('\n');
    }
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out.push_str(&format!(
        "summary: {} rows={} violations={} equalities={}\n",
        if report.pass { "PASS" } else { "FAIL" },
        report.rows.len(),
        report.violations(),
        report.equalities().len(),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::verify_theorem_a;

    #[test]
    fn csv_is_byte_stable_and_ordered() {
        let report = verify_theorem_a(70, 1).unwrap();
        let a = report_to_csv(&report);
        let b = report_to_csv(&report);
        assert_eq!(a, b);
        let lines: Vec<&str> = a.lines().collect();
        assert!(lines[0].starts_with("n,tier,descriptor"));
        let mut keys: Vec<(u64, String)> = Vec::new();
        for line in &lines[1..] {
            let fields: Vec<&str> = line.split(',').collect();
            keys.push((fields[0].parse().unwrap(), fields[2].to_string()));
        }
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted, "rows must be ordered by (n, descriptor)");
    }

    #[test]
    fn json_contains_summary() {
        let report = verify_theorem_a(30, 1).unwrap();
        let json = report_to_json(&report);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(value["summary"]["pass"].as_bool().unwrap());
        assert_eq!(value["summary"]["theorem"], "TA");
        assert!(value["rows"].as_array().unwrap().iter().all(|r| r["ratio_den"].is_u64()));
    }

    #[test]
    fn plain_mentions_summary() {
        let report = verify_theorem_a(30, 1).unwrap();
        let plain = report_to_plain(&report);
        assert!(plain.contains("summary: PASS"));
        assert!(plain.contains("85/301"));
    }
}
