//! The `OutputRecord` interchange format.
//!
//! JSON: `{"schema": "theta-asym/1", "command": …, "params": {…}, "rows": [{…}]}`.
//! Integers are decimal strings, rationals are `"p/q"` strings, floats carry
//! 17 significant digits, log-scaled reals are `{"sign": s, "logmag": x}`.
//! CSV has a header row; a log-scaled column `c` becomes `c_sign,c_logmag`.

use std::io::{self, Write};

use indexmap::IndexMap;
use num_bigint::BigInt;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::rational::{format_rat, Rat};
use crate::special::LogReal;

pub const SCHEMA: &str = "theta-asym/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(BigInt),
    Float(f64),
    Rat(Rat),
    Log(LogReal),
    Text(String),
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<LogReal> for Cell {
    fn from(v: LogReal) -> Self {
        Cell::Log(v)
    }
}

impl From<Rat> for Cell {
    fn from(v: Rat) -> Self {
        Cell::Rat(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v.into())
    }
}

/// 17 significant digits, or `None` for non-finite values.
pub fn format_float(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

fn raw_float(x: f64) -> Option<Box<RawValue>> {
    format_float(x).map(|s| RawValue::from_string(s).expect("valid JSON number"))
}

#[derive(Serialize)]
struct LogRealJson {
    sign: i8,
    logmag: Option<Box<RawValue>>,
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_str(&v.to_string()),
            Cell::Float(v) => raw_float(*v).serialize(s),
            Cell::Rat(v) => s.serialize_str(&format_rat(v)),
            Cell::Log(v) => LogRealJson {
                sign: v.sign(),
                logmag: raw_float(v.logmag()),
            }
            .serialize(s),
            Cell::Text(v) => s.serialize_str(v),
        }
    }
}

/// One row with columns in declaration order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Row(pub Vec<(&'static str, Cell)>);

impl Row {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &'static str, cell: impl Into<Cell>) -> Self {
        self.0.push((name, cell.into()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Cell> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, c)| c)
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (name, cell) in &self.0 {
            map.serialize_entry(name, cell)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputRecord {
    pub schema: &'static str,
    pub command: String,
    pub params: IndexMap<String, serde_json::Value>,
    pub rows: Vec<Row>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            schema: SCHEMA,
            command: command.to_string(),
            params: IndexMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records always serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(first) = self.rows.first() {
            let mut header = Vec::new();
            for (name, cell) in &first.0 {
                match cell {
                    Cell::Log(_) => {
                        header.push(format!("{name}_sign"));
                        header.push(format!("{name}_logmag"));
                    }
                    _ => header.push(name.to_string()),
                }
            }
            w.write_record(&header).expect("in-memory write");
        }
        for row in &self.rows {
            let mut fields = Vec::new();
            for (_, cell) in &row.0 {
                match cell {
                    Cell::Int(v) => fields.push(v.to_string()),
                    Cell::Float(v) => fields.push(format_float(*v).unwrap_or_default()),
                    Cell::Rat(v) => fields.push(format_rat(v)),
                    Cell::Log(v) => {
                        fields.push(v.sign().to_string());
                        fields.push(format_float(v.logmag()).unwrap_or_default());
                    }
                    Cell::Text(v) => fields.push(v.clone()),
                }
            }
            w.write_record(&fields).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.to_json()),
            Format::Csv => write!(out, "{}", self.to_csv()),
        }
    }
}
