//! Row-oriented output tables with fixed column order and fixed float
//! formatting, rendered as JSON or CSV.

use anyhow::Result;
use num_bigint::BigInt;
use serde_json::{Map, Value};
use xx0::LaurentPoly;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Big(BigInt),
    Float(f64),
    Text(String),
    Bool(bool),
    Poly(LaurentPoly),
    Missing,
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
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

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Big(v)
    }
}

impl From<LaurentPoly> for Cell {
    fn from(v: LaurentPoly) -> Self {
        Cell::Poly(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Missing, Into::into)
    }
}

/// 15 significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.14e}")
    } else {
        x.to_string()
    }
}

impl Cell {
    /// The text used in CSV; JSON strings carry the same text.
    pub fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Big(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(v) => v.clone(),
            Cell::Bool(v) => v.to_string(),
            Cell::Poly(p) => p.to_json(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(v) => Value::from(*v),
            Cell::Poly(p) => serde_json::to_value(p).expect("polynomials serialize"),
            Cell::Missing => Value::Null,
            other => Value::String(other.text()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }

    /// One object per row, keys in column order, one row per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            let obj: Map<String, Value> =
                self.columns.iter().zip(row).map(|(c, cell)| (c.to_string(), cell.json())).collect();
            out.push_str(if i == 0 { "\n  " } else { ",\n  " });
            out.push_str(&Value::Object(obj).to_string());
        }
        out.push_str(if self.rows.is_empty() { "]\n" } else { "\n]\n" });
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

/// Parses either encoding back into rows of cell texts, for round-trip checks.
pub fn parse_texts(encoded: &str, format: Format) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    match format {
        Format::Csv => {
            let mut r = csv::Reader::from_reader(encoded.as_bytes());
            let header = r.headers()?.iter().map(str::to_string).collect();
            let rows = r.records().map(|rec| Ok(rec?.iter().map(str::to_string).collect())).collect::<Result<_>>()?;
            Ok((header, rows))
        }
        Format::Json => {
            let v: Vec<Map<String, Value>> = serde_json::from_str(encoded)?;
            let header = v.first().map(|o| o.keys().cloned().collect()).unwrap_or_default();
            let rows = v
                .iter()
                .map(|o| {
                    o.values()
                        .map(|x| match x {
                            Value::String(s) => s.clone(),
                            Value::Null => String::new(),
                            other => other.to_string(),
                        })
                        .collect()
                })
                .collect();
            Ok((header, rows))
        }
    }
}
