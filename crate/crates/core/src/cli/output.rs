//! Tabular result rendering (CSV / JSON) and atomic file output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::config::{OutputFormat, SweepConfig};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Cell {
    /// Fixed textual form: floats as 17 significant digits in scientific
    /// notation, so output is byte-stable across runs.
    pub fn render(&self) -> String {
        match self {
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Float(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Int(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(v) => json!(v),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Summary of a run, emitted in JSON output and on stderr.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub command: &'static str,
    pub rows: usize,
    pub failures: usize,
    /// Largest residual/error in the table, where the command has one.
    pub max_error: Option<f64>,
    pub threshold: Option<f64>,
    pub version: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

pub fn render_csv(table: &Table) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush()?;
    w.into_inner().map_err(|e| e.into_error().into())
}

pub fn render_json(
    config: &SweepConfig,
    table: &Table,
    meta: &Meta,
) -> serde_json::Result<Vec<u8>> {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = table
                .columns
                .iter()
                .zip(row)
                .map(|(c, v)| (c.to_string(), v.to_json()))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let doc = json!({ "config": config, "rows": rows, "meta": meta });
    let mut bytes = serde_json::to_vec_pretty(&doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

pub fn render(config: &SweepConfig, table: &Table, meta: &Meta) -> std::io::Result<Vec<u8>> {
    match config.format {
        OutputFormat::Csv => render_csv(table).map_err(std::io::Error::other),
        OutputFormat::Json => render_json(config, table, meta).map_err(std::io::Error::other),
    }
}

/// Write via a temporary file in the target directory, then rename, so a
/// reader never observes a partially written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
