//! Tabular results and their CSV / JSON renderings.

use serde_json::{json, Value};

use super::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// Result of one task: scalar summary values plus a table.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub summary: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            summary: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_owned(), value.into()));
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric value at `(row, column)`, if present.
    pub fn num(&self, row: usize, name: &str) -> Option<f64> {
        match self.rows.get(row)?.get(self.column(name)?)? {
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }

    pub fn summary_num(&self, key: &str) -> Option<f64> {
        self.summary.iter().find(|(k, _)| k == key).and_then(|(_, v)| match v {
            Cell::Num(v) => Some(*v),
            _ => None,
        })
    }
}

/// 17 significant digits.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Num(v) => format_float(*v),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    }
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        Cell::Num(v) if v.is_finite() => json!(v),
        Cell::Num(_) | Cell::Empty => Value::Null,
        Cell::Text(s) => json!(s),
        Cell::Bool(b) => json!(b),
    }
}

/// Identification written ahead of every result.
#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub version: String,
    pub task: String,
    pub config_sha256: String,
    pub seed: u64,
}

pub const UNITS_NOTE: &str = "hbar = c = 1; speeds are u/c; temperatures in energy units";

pub fn render(report: &Report, meta: &Metadata, format: Format) -> String {
    match format {
        Format::Csv => render_csv(report, meta),
        Format::Json => render_json(report, meta),
    }
}

fn render_csv(report: &Report, meta: &Metadata) -> String {
    let mut out = String::new();
    out.push_str(&format!("# photon-drag {}\n", meta.version));
    out.push_str(&format!("# task: {}\n", meta.task));
    out.push_str(&format!("# config_sha256: {}\n", meta.config_sha256));
    out.push_str(&format!("# seed: {}\n", meta.seed));
    out.push_str(&format!("# units: {UNITS_NOTE}\n"));
    for (key, value) in &report.summary {
        out.push_str(&format!("# {key}: {}\n", csv_cell(value)));
    }
    out.push_str(&report.columns.join(","));
    out.push('\n');
    for row in &report.rows {
        let cells: Vec<String> = row.iter().map(csv_cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn render_json(report: &Report, meta: &Metadata) -> String {
    let summary: serde_json::Map<String, Value> = report
        .summary
        .iter()
        .map(|(k, v)| (k.clone(), json_cell(v)))
        .collect();
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| Value::Array(r.iter().map(json_cell).collect()))
        .collect();
    let doc = json!({
        "version": meta.version,
        "task": meta.task,
        "config_sha256": meta.config_sha256,
        "seed": meta.seed,
        "units": UNITS_NOTE,
        "summary": summary,
        "columns": report.columns,
        "rows": rows,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    text.push('\n');
    text
}
