//! Shared rendering helpers.
//!
//! Rational scalars become JSON strings (`"3/2"`) so that no precision is
//! lost; floats become JSON numbers. CSV cells use the same text form.

use aristotle_core::Scalar;
use serde_json::Value;

use crate::error::CliError;

pub fn scalar_json<S: Scalar>(v: &S) -> Value {
    if S::EXACT {
        return Value::String(v.render());
    }
    match serde_json::Number::from_f64(v.to_f64()) {
        Some(n) => Value::Number(n),
        None => Value::String(v.render()),
    }
}

pub fn pretty_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// RFC 4180 CSV with a header row.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 cells is UTF-8"))
}
