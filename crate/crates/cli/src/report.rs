//! Tabular output as CSV (with `#` comment lines) or one JSON object with
//! `params`, `results` and `diagnostics`.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::config::Format;

#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Num(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Default)]
pub struct Report {
    pub params: Value,
    /// Comment lines printed above the CSV header.
    pub header: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Comment lines printed below the CSV rows.
    pub summary: Vec<String>,
    pub diagnostics: Map<String, Value>,
    /// Messages also written to standard error.
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(params: Value, columns: &[&str]) -> Self {
        Self { params, columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn diagnostic(&mut self, key: &str, value: impl serde::Serialize) {
        self.diagnostics.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn warn(&mut self, msg: String) {
        self.summary.push(format!("warning: {msg}"));
        self.warnings.push(msg);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for line in &self.header {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        for line in &self.summary {
            writeln!(out, "# {line}")?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Object(self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect()))
            .collect();
        let mut diagnostics = self.diagnostics.clone();
        let notes: Vec<&String> = self.header.iter().chain(&self.summary).collect();
        if !notes.is_empty() {
            diagnostics.insert("notes".into(), json!(notes));
        }
        let doc = json!({ "params": self.params, "results": results, "diagnostics": diagnostics });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}
