//! Output formatting shared by the subcommands.
//!
//! Text output is for reading; CSV and JSON are for machines. Indicator
//! values are printed with six decimals in text and CSV, and as full-
//! precision numbers in JSON. Undefined values appear as the literal
//! `UNDEFINED` in text and CSV, and as `null` plus `"defined": false` in
//! JSON.

use clap::ValueEnum;
use serde::Serialize;

use iv_core::Year;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// Six-decimal rendering of an indicator value. Tiny negative rounding
/// artifacts would otherwise print as `-0.000000`.
pub fn fmt_iv(iv: f64) -> String {
    let s = format!("{iv:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Literal used for undefined values in text and CSV output.
pub const UNDEFINED: &str = "UNDEFINED";

/// Thresholds render without trailing zeros ("1", "0.9") in headings.
pub fn fmt_threshold(threshold: f64) -> String {
    format!("{threshold}")
}

/// Space-padded columns: every column as wide as its widest cell, two
/// spaces between columns, no trailing whitespace.
pub fn render_aligned(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            if i + 1 < row.len() {
                line.push_str(&format!("{cell:<width$}", width = widths[i]));
            } else {
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct ComputeJson {
    pub researcher_id: String,
    pub year: Year,
    pub n: usize,
    pub iv: f64,
}

#[derive(Serialize)]
pub struct SeriesRowJson {
    pub researcher_id: String,
    pub year: Year,
    pub iv: Option<f64>,
    pub defined: bool,
}

#[derive(Serialize)]
pub struct CellPairJson {
    pub all_at_or_above_one: usize,
    pub below_one_some_year: usize,
}

#[derive(Serialize)]
pub struct ExclusionsJson {
    pub unknown_label: usize,
    pub no_defined_years: usize,
}

#[derive(Serialize)]
pub struct TableJson {
    pub selected: CellPairJson,
    pub not_selected: CellPairJson,
    pub excluded: ExclusionsJson,
    pub cohort_size: usize,
}

#[derive(Serialize)]
pub struct PerturbRowJson {
    pub year: Year,
    pub iv_before: f64,
    pub iv_after: Option<f64>,
    pub delta_iv: Option<f64>,
    pub defined: bool,
}
