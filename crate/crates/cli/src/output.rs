use serde_json::{Map, Value};

use crate::CliError;

pub const SCHEMA: &str = "shapeforge/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// A fully computed command result, rendered only once nothing can fail.
#[derive(Debug)]
pub struct Report {
    command: &'static str,
    fields: Map<String, Value>,
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
    /// Name of the JSON array holding the rows.
    rows_key: &'static str,
    /// Lines printed before the rows in plain output.
    preamble: Vec<String>,
    /// Plain output shows only this column, without a header.
    plain_column: Option<usize>,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Int(i64),
    Float(f64),
    Empty,
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(n) => n.to_string(),
            Cell::Float(x) => fmt_g(*x),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(n) => Value::from(*n),
            Cell::Float(x) => json_float(*x),
            Cell::Empty => Value::Null,
        }
    }
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            fields: Map::new(),
            header: Vec::new(),
            rows: Vec::new(),
            rows_key: "rows",
            preamble: Vec::new(),
            plain_column: None,
        }
    }

    /// Scalar field: shown in JSON and as a `key: value` line in plain output.
    pub fn field(mut self, key: &str, value: impl Into<Cell>) -> Self {
        let cell = value.into();
        self.preamble.push(format!("{key}: {}", cell.text()));
        self.fields.insert(key.to_owned(), cell.json());
        self
    }

    /// Structured JSON-only field; floats are rounded like every other.
    pub fn json_field(mut self, key: &str, value: impl serde::Serialize) -> Result<Self, CliError> {
        let v = serde_json::to_value(value).map_err(|e| CliError::Output(e.to_string()))?;
        self.fields.insert(key.to_owned(), round_floats(v));
        Ok(self)
    }

    pub fn columns(mut self, key: &'static str, header: &[&str]) -> Self {
        self.rows_key = key;
        self.header = header.iter().map(|s| (*s).to_owned()).collect();
        self
    }

    pub fn plain_column(mut self, index: usize) -> Self {
        self.plain_column = Some(index);
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Plain => Ok(self.render_plain()),
        }
    }

    fn render_json(&self) -> Result<String, CliError> {
        let mut top = Map::new();
        top.insert("schema".into(), SCHEMA.into());
        top.insert("command".into(), self.command.into());
        for (k, v) in &self.fields {
            top.insert(k.clone(), v.clone());
        }
        if !self.header.is_empty() {
            let rows = self
                .rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = self
                        .header
                        .iter()
                        .zip(r)
                        .map(|(h, c)| (h.clone(), c.json()))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            top.insert(self.rows_key.into(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top))
            .map_err(|e| CliError::Output(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// Rows when the command has any; otherwise the scalar fields as one row.
    fn render_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| CliError::Output(e.to_string());
        if self.header.is_empty() {
            w.write_record(self.fields.keys()).map_err(csv_err)?;
            w.write_record(self.fields.values().map(json_scalar_text))
                .map_err(csv_err)?;
        } else {
            w.write_record(&self.header).map_err(csv_err)?;
            for r in &self.rows {
                w.write_record(r.iter().map(Cell::text)).map_err(csv_err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }

    fn render_plain(&self) -> String {
        let mut out = String::new();
        for line in &self.preamble {
            out.push_str(line);
            out.push('\n');
        }
        let single = match self.header.len() {
            1 => Some(0),
            _ => self.plain_column,
        };
        match (self.header.len(), single) {
            (0, _) => {}
            (_, Some(col)) => {
                for r in &self.rows {
                    out.push_str(&r[col].text());
                    out.push('\n');
                }
            }
            _ => {
                out.push_str(&self.header.join("\t"));
                out.push('\n');
                for r in &self.rows {
                    let line: Vec<String> = r.iter().map(Cell::text).collect();
                    out.push_str(&line.join("\t"));
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn json_scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => fmt_g(x),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

/// A float rounded to 12 significant digits; non-finite values become null.
fn json_float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = fmt_g(x).parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json_float(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

const SIG_DIGITS: i32 = 12;

/// Format like C's `%.12g`.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (SIG_DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..SIG_DIGITS).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIG_DIGITS - 1 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(fmt_g(0.1), "0.1");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(2.0), "2");
        assert_eq!(fmt_g(123456789012.0), "123456789012");
        assert_eq!(fmt_g(1234567890123.0), "1.23456789012e+12");
        assert_eq!(fmt_g(0.0001), "0.0001");
        assert_eq!(fmt_g(0.00001234), "1.234e-05");
        assert_eq!(fmt_g(-0.75632812), "-0.75632812");
        assert_eq!(fmt_g(9.9999999999999e-5), "0.0001");
        assert_eq!(fmt_g(0.0), "0");
    }

    #[test]
    fn csv_always_has_header() {
        let r = Report::new("t").columns("rows", &["a", "b"]);
        assert_eq!(r.render(Format::Csv).unwrap(), "a,b\n");
    }

    #[test]
    fn json_carries_schema() {
        let r = Report::new("t").field("x", 0.1 + 0.2);
        let v: Value = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["x"], 0.3);
    }
}
