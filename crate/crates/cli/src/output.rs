//! Tabular output: CSV or JSON, rendered in memory and written in one go.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Fixed-point with the requested number of decimals.
    Fixed(f64),
    /// Scientific notation with the requested number of decimals.
    Sci(f64),
    Bool(bool),
    Text(String),
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, precision: usize) -> String {
        match format {
            Format::Csv => self.to_csv(precision),
            Format::Json => self.to_json(precision),
        }
    }

    fn to_csv(&self, precision: usize) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| csv_field(c, precision)).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self, precision: usize) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(|c| json_value(c, precision)).collect()))
            .collect();
        let doc = json!({ "columns": self.columns, "rows": rows });
        let mut text = serde_json::to_string_pretty(&doc).expect("plain values serialize");
        text.push('\n');
        text
    }
}

/// `-0.000` becomes `0.000`.
fn strip_negative_zero(text: String) -> String {
    match text.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| matches!(c, '0' | '.' | 'e' | 'E' | '+' | '-')) => rest.to_string(),
        _ => text,
    }
}

pub fn fixed(value: f64, precision: usize) -> String {
    strip_negative_zero(format!("{value:.precision$}"))
}

pub fn sci(value: f64, precision: usize) -> String {
    strip_negative_zero(format!("{value:.precision$e}"))
}

fn csv_field(cell: &Cell, precision: usize) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Fixed(v) => fixed(*v, precision),
        Cell::Sci(v) => sci(*v, precision),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

fn json_value(cell: &Cell, precision: usize) -> Value {
    let rounded = |text: String| text.parse::<f64>().ok().filter(|v| v.is_finite()).map_or(Value::Null, |v| json!(v));
    match cell {
        Cell::Int(v) => json!(v),
        Cell::Fixed(v) => rounded(fixed(*v, precision)),
        Cell::Sci(v) => rounded(sci(*v, precision)),
        Cell::Bool(b) => json!(b),
        Cell::Text(s) => json!(s),
        Cell::Empty => Value::Null,
    }
}

/// Writes `text` to `path` through a temporary file in the same directory,
/// or to stdout when `path` is `None`.
pub fn emit(text: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(fixed(-0.0, 3), "0.000");
        assert_eq!(fixed(-1e-9, 5), "0.00000");
        assert_eq!(fixed(-1.5, 1), "-1.5");
        assert_eq!(sci(-0.0, 2), "0.00e0");
        assert_eq!(sci(-2.5e-7, 2), "-2.50e-7");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["n", "x", "ok", "note"]);
        t.push(vec![Cell::Int(1), Cell::Fixed(0.123456), Cell::Bool(true), Cell::Text("a,b".into())]);
        t.push(vec![Cell::Int(2), Cell::Fixed(-0.0), Cell::Bool(false), Cell::Empty]);
        assert_eq!(t.render(Format::Csv, 3), "n,x,ok,note\n1,0.123,true,\"a,b\"\n2,0.000,false,\n");
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new(["n", "x", "d"]);
        t.push(vec![Cell::Int(3), Cell::Fixed(1.0 / 3.0), Cell::Sci(f64::NAN)]);
        let v: Value = serde_json::from_str(&t.render(Format::Json, 4)).unwrap();
        assert_eq!(v["columns"], json!(["n", "x", "d"]));
        assert_eq!(v["rows"][0], json!([3, 0.3333, null]));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        std::fs::write(&path, "old").unwrap();
        emit("new\n", Some(&path)).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "new\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
