//! Tabular output with a run manifest, in CSV or JSON, and a reader for the
//! CSV form.
//!
//! CSV numbers are written with 17 significant digits (`{:.16e}`), which
//! round-trips every finite `f64` exactly.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Num(v) => Some(v),
            Cell::Int(v) => Some(v as f64),
            Cell::Text(_) => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // NaN and infinities have no JSON form
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.clone()),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.csv())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

/// Provenance block written ahead of every table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub timestamp: String,
    pub inputs: BTreeMap<String, Value>,
    pub settings: BTreeMap<String, Value>,
}

impl Manifest {
    pub fn new(command: &str, timestamp: String) -> Self {
        Manifest {
            tool: "thinsheet".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            timestamp,
            inputs: BTreeMap::new(),
            settings: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn setting(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.settings.insert(key.to_string(), value.into());
        self
    }
}

/// The result of one command ready for rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub manifest: Manifest,
    pub table: Table,
    pub summary: BTreeMap<String, Value>,
}

fn csv_line(cells: impl IntoIterator<Item = String>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(cells).expect("in-memory csv write");
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}

pub fn render_csv(report: &Report) -> String {
    let m = &report.manifest;
    let mut out = String::new();
    let _ = writeln!(out, "# {} {}", m.tool, m.version);
    let _ = writeln!(out, "# command: {}", m.command);
    let _ = writeln!(out, "# timestamp: {}", m.timestamp);
    for (k, v) in &m.inputs {
        let _ = writeln!(out, "# input.{k}: {v}");
    }
    for (k, v) in &m.settings {
        let _ = writeln!(out, "# setting.{k}: {v}");
    }
    out.push_str(&csv_line(report.table.columns.iter().cloned()));
    for row in &report.table.rows {
        out.push_str(&csv_line(row.iter().map(Cell::csv)));
    }
    for (k, v) in &report.summary {
        let _ = writeln!(out, "# summary.{k}: {v}");
    }
    out
}

pub fn render_json(report: &Report) -> String {
    let rows: Vec<Value> = report
        .table
        .rows
        .iter()
        .map(|row| {
            let obj: serde_json::Map<String, Value> = report
                .table
                .columns
                .iter()
                .cloned()
                .zip(row.iter().map(Cell::json))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let mut doc = serde_json::Map::new();
    doc.insert(
        "manifest".into(),
        serde_json::to_value(&report.manifest).expect("manifest serializes"),
    );
    doc.insert("rows".into(), Value::Array(rows));
    if !report.summary.is_empty() {
        doc.insert(
            "summary".into(),
            serde_json::to_value(&report.summary).expect("summary serializes"),
        );
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json output");
    s.push('\n');
    s
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("row {row} has {got} fields, header has {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("missing header row")]
    NoHeader,
}

/// Reads a table written by [`render_csv`]. `#` lines are skipped; fields
/// that parse as `f64` become [`Cell::Num`], everything else [`Cell::Text`].
pub fn read_table(text: &str) -> Result<Table, TableError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.is_empty() {
        return Err(TableError::NoHeader);
    }
    let columns: Vec<String> = header.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        if rec.len() != columns.len() {
            return Err(TableError::Ragged {
                row: i + 1,
                got: rec.len(),
                expected: columns.len(),
            });
        }
        rows.push(
            rec.iter()
                .map(|f| match f.parse::<f64>() {
                    Ok(v) => Cell::Num(v),
                    Err(_) => Cell::text(f),
                })
                .collect(),
        );
    }
    Ok(Table { columns, rows })
}
