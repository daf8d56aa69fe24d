//! Tabular output documents rendered as CSV (default) or JSON.
//!
//! CSV always starts with a header row; numbers carry 17 significant digits
//! so that values survive a parse/print round trip and golden files stay
//! stable. The JSON rendering follows `schemas/output.schema.json`.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Complex(Complex64),
    Text(String),
    /// Exact rational such as `5/2`.
    Rational(String),
    /// Pair-partition blocks.
    Blocks(Vec<(usize, usize)>),
}

/// A rendered command result: echoed parameters plus one table.
#[derive(Debug, Clone)]
pub struct Document {
    pub command: &'static str,
    pub params: Vec<(&'static str, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Document {
    pub fn new<I, S>(command: &'static str, columns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Document {
            command,
            params: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &'static str, value: impl Into<Value>) {
        self.params.push((key, value.into()));
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| csv_escape(&c.to_csv())).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let object: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(col, cell)| (col.clone(), cell.to_json()))
                    .collect();
                Value::Object(object)
            })
            .collect();
        let doc = json!({
            "command": self.command,
            "params": Value::Object(params),
            "columns": self.columns,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
        text.push('\n');
        text
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: Option<&str>) -> Result<Self, super::CliError> {
        match s.unwrap_or("csv") {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(super::CliError::Config(format!(
                "unknown format {other:?} (expected \"csv\" or \"json\")"
            ))),
        }
    }
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_f64(*v),
            Cell::Complex(z) => format_complex(*z),
            Cell::Text(s) => s.clone(),
            Cell::Rational(s) => s.clone(),
            Cell::Blocks(blocks) => blocks
                .iter()
                .map(|(l, r)| format!("({l},{r})"))
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Real(v) => json!(v),
            Cell::Complex(z) => json!({"re": z.re, "im": z.im}),
            Cell::Text(s) => json!(s),
            Cell::Rational(s) => json!(s),
            Cell::Blocks(blocks) => {
                json!(blocks.iter().map(|&(l, r)| vec![l, r]).collect::<Vec<_>>())
            }
        }
    }
}

/// 17 significant digits, round-trip safe for every f64.
pub fn format_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0.0
    format!("{x:.16e}")
}

/// Compact complex literal matching the input grammar: `re` when the
/// imaginary part is zero, `re+imi`/`re-imi` otherwise.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format_f64(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", format_f64(z.re), format_f64(-z.im))
    } else {
        format!("{}+{}i", format_f64(z.re), format_f64(z.im))
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
