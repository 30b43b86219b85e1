//! Text, CSV and JSON renderings of operators and reports.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::json;
use tvcable_core::growth::{NormReport, NormRow};
use tvcable_core::CablingOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Nonzero entries in row-major order, 1-based.
fn nonzero_entries(op: &CablingOperator) -> impl Iterator<Item = (usize, usize)> + '_ {
    let n = op.dim();
    (1..=n)
        .flat_map(move |row| (1..=n).map(move |col| (row, col)))
        .filter(|&(row, col)| !op.entry(row, col).is_zero())
}

pub fn operator(op: &CablingOperator, format: Format, numeric: bool) -> String {
    match (format, numeric) {
        (Format::Json, false) => {
            let n = op.dim();
            let entries: Vec<Vec<String>> = (1..=n)
                .map(|row| (1..=n).map(|col| op.entry(row, col).to_string()).collect())
                .collect();
            let value = json!({
                "r": op.param().r(),
                "p": op.p(),
                "q": op.q(),
                "dim": n,
                "entries": entries,
            });
            format!("{value:#}\n")
        }
        (Format::Json, true) => {
            let view = op.numeric_view();
            let entries: Vec<Vec<[f64; 2]>> = view
                .row_iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect();
            let value = json!({
                "r": op.param().r(),
                "p": op.p(),
                "q": op.q(),
                "dim": op.dim(),
                "entries": entries,
            });
            format!("{value:#}\n")
        }
        (Format::Csv, false) => {
            let mut out = String::from("row,col,entry\n");
            for (row, col) in nonzero_entries(op) {
                let _ = writeln!(out, "{row},{col},{}", op.entry(row, col));
            }
            out
        }
        (Format::Csv, true) => {
            let view = op.numeric_view();
            let mut out = String::from("row,col,re,im\n");
            for (row, col) in nonzero_entries(op) {
                let z = view[(row - 1, col - 1)];
                let _ = writeln!(out, "{row},{col},{:.16e},{:.16e}", z.re, z.im);
            }
            out
        }
    }
}

fn norm_cell(value: &tvcable_core::Result<f64>) -> String {
    match value {
        Ok(x) => format!("{x:.10}"),
        Err(_) => "no-convergence".to_string(),
    }
}

fn norm_line(row: &NormRow) -> String {
    format!(
        "{},{},{},{},{}",
        row.r,
        row.m,
        norm_cell(&row.forward),
        norm_cell(&row.inverse),
        if row.pass() { "PASS" } else { "FAIL" }
    )
}

pub fn norm_table(report: &NormReport) -> String {
    let mut out = String::from("r,m,norm,inverse_norm,verdict\n");
    for row in &report.rows {
        out.push_str(&norm_line(row));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use tvcable_core::{cabling_matrix, TqftParameter};

    #[test]
    fn exact_json_for_r5() {
        let op = cabling_matrix(&TqftParameter::new(5).unwrap(), 1, 2).unwrap();
        let value: serde_json::Value =
            serde_json::from_str(&operator(&op, Format::Json, false)).unwrap();
        assert_eq!(value["dim"], 2);
        assert_eq!(value["entries"][0][0], "1");
        assert_eq!(value["entries"][1][0], "0");
    }

    #[test]
    fn csv_lists_nonzeros() {
        let op = cabling_matrix(&TqftParameter::new(7).unwrap(), 3, 2).unwrap();
        let csv = operator(&op, Format::Csv, false);
        assert_eq!(csv.lines().next(), Some("row,col,entry"));
        assert_eq!(csv.lines().count() - 1, 6);
        let numeric = operator(&op, Format::Csv, true);
        assert_eq!(numeric.lines().count(), csv.lines().count());
    }
}
