//! Command reports rendered as text, JSON or CSV.
//!
//! Floating values are printed with 15 significant digits in every format.
//! Exact rationals are rendered as `"p/q"` strings.

use std::fmt::Write as _;

use clap::ValueEnum;
use coneangle::{ExactRatio, SymmetricMatrix};
use serde_json::{json, Map, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i128),
    Float(f64),
    Ratio(ExactRatio),
    Bool(bool),
    Text(String),
    Matrix(Vec<Vec<f64>>),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<ExactRatio> for Value {
    fn from(x: ExactRatio) -> Self {
        Value::Ratio(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl From<&SymmetricMatrix<f64>> for Value {
    fn from(m: &SymmetricMatrix<f64>) -> Self {
        Value::Matrix(m.to_rows())
    }
}

impl<V: Into<Value>> From<Option<V>> for Value {
    fn from(x: Option<V>) -> Self {
        x.map_or(Value::Null, Into::into)
    }
}

macro_rules! int_value {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(x: $t) -> Self {
                Value::Int(x as i128)
            }
        }
    )*};
}
int_value!(i32, i64, i128, u32, u64, u128, usize);

/// `%.15g`: 15 significant digits, trailing zeros trimmed, exponent form
/// outside `[1e-5, 1e15)`.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.14e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..15).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (14 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds to 15 significant digits; JSON then prints the shortest round-trip form.
fn round15(x: f64) -> f64 {
    if x.is_finite() {
        format!("{:.14e}", x).parse().expect("reparse")
    } else {
        x
    }
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::Int(i) => match i64::try_from(*i) {
                Ok(v) => json!(v),
                Err(_) => json!(i.to_string()),
            },
            Value::Float(x) if x.is_finite() => json!(round15(*x)),
            Value::Float(x) => json!(x.to_string()),
            Value::Ratio(r) => json!(format!("{}/{}", r.numer(), r.denom())),
            Value::Bool(b) => json!(b),
            Value::Text(s) => json!(s),
            Value::Matrix(rows) => Json::Array(
                rows.iter()
                    .map(|r| Json::Array(r.iter().map(|&x| json!(round15(x))).collect()))
                    .collect(),
            ),
            Value::Null => Json::Null,
        }
    }

    fn to_plain(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Float(x) => fmt_float(*x),
            Value::Ratio(r) => format!("{}/{}", r.numer(), r.denom()),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::Matrix(rows) => rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| fmt_float(x))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("; "),
            Value::Null => String::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Outcome of one command: echoed inputs, named results and an optional table.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, Value)>,
    pub results: Vec<(String, Value)>,
    pub table: Option<Table>,
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.push((key.to_string(), value.into()));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.push((key.to_string(), value.into()));
        self
    }

    /// Records an angle the three standard ways: cosine, radians and multiple of π.
    pub fn angle(&mut self, prefix: &str, cosine: f64, angle: f64) -> &mut Self {
        let key = |s: &str| {
            if prefix.is_empty() {
                s.to_string()
            } else {
                format!("{prefix}_{s}")
            }
        };
        self.result(&key("cosine"), cosine);
        self.result(&key("angle_rad"), angle);
        self.result(&key("angle_over_pi"), angle / std::f64::consts::PI)
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.results.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json(format)).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self, format: Format) -> Json {
        let obj = |pairs: &[(String, Value)]| {
            Json::Object(
                pairs
                    .iter()
                    .map(|(k, v)| (k.clone(), v.to_json()))
                    .collect::<Map<_, _>>(),
            )
        };
        let table = self.table.as_ref().map_or(Json::Null, |t| {
            json!({
                "columns": t.columns,
                "rows": t.rows.iter()
                    .map(|r| Json::Array(r.iter().map(Value::to_json).collect()))
                    .collect::<Vec<_>>(),
            })
        });
        json!({
            "command": self.command,
            "format": format.name(),
            "seed": self.seed,
            "inputs": obj(&self.inputs),
            "results": obj(&self.results),
            "table": table,
        })
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        for (title, pairs) in [("inputs", &self.inputs), ("results", &self.results)] {
            if pairs.is_empty() {
                continue;
            }
            let _ = writeln!(s, "{title}:");
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in pairs {
                match v {
                    Value::Matrix(rows) => {
                        let _ = writeln!(s, "  {k}:");
                        for r in rows {
                            let cells: Vec<_> =
                                r.iter().map(|&x| format!("{:>22}", fmt_float(x))).collect();
                            let _ = writeln!(s, "    {}", cells.join(" "));
                        }
                    }
                    _ => {
                        let _ = writeln!(s, "  {k:<width$} = {}", v.to_plain());
                    }
                }
            }
        }
        if let Some(t) = &self.table {
            let cells: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|r| r.iter().map(Value::to_plain).collect())
                .collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|j| {
                    cells
                        .iter()
                        .map(|r| r[j].len())
                        .chain([t.columns[j].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |row: &[String]| {
                row.iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(s, "table:");
            let _ = writeln!(s, "  {}", line(&t.columns));
            for r in &cells {
                let _ = writeln!(s, "  {}", line(r));
            }
        }
        s
    }

    /// The table if present, otherwise `key,value` rows of inputs then results.
    fn to_csv(&self) -> String {
        let mut s = String::new();
        match &self.table {
            Some(t) => {
                let header: Vec<_> = t.columns.iter().map(|c| csv_field(c)).collect();
                let _ = writeln!(s, "{}", header.join(","));
                for r in &t.rows {
                    let cells: Vec<_> = r.iter().map(|v| csv_field(&v.to_plain())).collect();
                    let _ = writeln!(s, "{}", cells.join(","));
                }
            }
            None => {
                let _ = writeln!(s, "section,key,value");
                for (section, pairs) in [("input", &self.inputs), ("result", &self.results)] {
                    for (k, v) in pairs {
                        let _ =
                            writeln!(s, "{section},{},{}", csv_field(k), csv_field(&v.to_plain()));
                    }
                }
            }
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_float(0.7677204728), "0.7677204728");
        assert_eq!(fmt_float(-0.7453559924999299), "-0.74535599249993");
        assert_eq!(fmt_float(2.0), "2");
        assert_eq!(fmt_float(1e-12), "1e-12");
        assert_eq!(fmt_float(123456789012345678.0), "1.23456789012346e+17");
        assert_eq!(fmt_float(0.0001), "0.0001");
        assert_eq!(fmt_float(0.0), "0");
    }

    #[test]
    fn json_is_one_object() {
        let mut r = Report::new("demo");
        r.input("q", 2u64)
            .angle("", -0.5, 2.0 * std::f64::consts::PI / 3.0);
        r.result("exact", ExactRatio::new(5, 9));
        let text = r.render(Format::Json);
        let v: Json = serde_json::from_str(&text).unwrap();
        assert!(v.is_object());
        assert_eq!(v["results"]["exact"], "5/9");
        assert_eq!(v["results"]["angle_over_pi"], 0.666666666666667);
    }

    #[test]
    fn csv_has_header() {
        let mut r = Report::new("demo");
        let mut t = Table::new(&["q", "n"]);
        t.push(vec![2u64.into(), 27u64.into()]);
        r.table = Some(t);
        assert_eq!(r.render(Format::Csv), "q,n\n2,27\n");
        let mut r = Report::new("demo");
        r.result("note", "a,b");
        assert_eq!(
            r.render(Format::Csv),
            "section,key,value\nresult,note,\"a,b\"\n"
        );
    }
}
