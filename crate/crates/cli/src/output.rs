//! CSV and JSON-lines rendering with fixed 12-significant-digit numbers.

use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Int(i64),
    Num(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Rounds to 12 significant digits, then prints the shortest decimal that
/// reads back to the rounded value. Very large or small magnitudes switch to
/// exponent notation.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    let magnitude = rounded.abs();
    if !(1e-5..1e15).contains(&magnitude) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

fn render_value(value: Value, format: Format) -> String {
    match value {
        Value::Int(i) => i.to_string(),
        Value::Num(x) if format == Format::Json && !x.is_finite() => "null".into(),
        Value::Num(x) => format_number(x),
    }
}

/// Named columns and rows, rendered in insertion order.
#[derive(Debug, Clone, Default)]
pub struct Records {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Records {
    pub fn new(columns: &[&str]) -> Self {
        Records { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn from_table(table: &fermion_entanglement::figures::Table) -> Self {
        Records {
            columns: table.columns.clone(),
            rows: table.rows.iter().map(|r| r.iter().map(|&x| Value::Num(x)).collect()).collect(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|&v| render_value(v, format)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            Format::Json => {
                for row in &self.rows {
                    out.push('{');
                    for (i, (name, &value)) in self.columns.iter().zip(row).enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        write!(out, "\"{name}\":{}", render_value(value, format)).unwrap();
                    }
                    out.push_str("}\n");
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(2.0), "2");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1e-21), "1e-21");
        assert_eq!(format_number(1.4512668734376123e-21), "1.45126687344e-21");
        assert_eq!(format_number(2.269_185_314_213_022), "2.26918531421");
        assert_eq!(format_number(123_456_789.123_456_8), "123456789.123");
        assert_eq!(format_number(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn csv_and_json() {
        let mut r = Records::new(&["L", "x"]);
        r.push(vec![Value::Int(4), Value::Num(0.25)]);
        r.push(vec![Value::Int(5), Value::Num(f64::INFINITY)]);
        assert_eq!(r.render(Format::Csv), "L,x\n4,0.25\n5,inf\n");
        assert_eq!(r.render(Format::Json), "{\"L\":4,\"x\":0.25}\n{\"L\":5,\"x\":null}\n");
    }
}
