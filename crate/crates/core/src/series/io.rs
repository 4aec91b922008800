//! CSV (`n,numerator,denominator`) and JSON (`["p/q", ...]`) forms of exact series.

use std::fmt::Write as _;

use rug::{Integer, Rational};

use crate::error::{Error, Result};

use super::Series;

pub const CSV_HEADER: &str = "n,numerator,denominator";

pub fn to_csv(s: &Series) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (n, c) in s.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{n},{},{}", c.numer(), c.denom());
    }
    out
}

/// Parses the CSV form. Rows may come in any order but must cover `0..=N` exactly once.
pub fn from_csv(text: &str) -> Result<Series> {
    let mut rows: Vec<(usize, Rational)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line == CSV_HEADER) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("line {}: expected 3 fields", lineno + 1)));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad index", lineno + 1)))?;
        let num: Integer = fields[1]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad numerator", lineno + 1)))?;
        let den: Integer = fields[2]
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad denominator", lineno + 1)))?;
        if den == 0 {
            return Err(Error::Parse(format!("line {}: zero denominator", lineno + 1)));
        }
        rows.push((n, Rational::from((num, den))));
    }
    assemble(rows)
}

pub fn to_json_value(s: &Series) -> serde_json::Value {
    serde_json::Value::Array(
        s.coeffs()
            .iter()
            .map(|c| serde_json::Value::String(format!("{}/{}", c.numer(), c.denom())))
            .collect(),
    )
}

pub fn to_json(s: &Series) -> String {
    to_json_value(s).to_string()
}

pub fn from_json_value(v: &serde_json::Value) -> Result<Series> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
    let mut rows = Vec::with_capacity(arr.len());
    for (n, item) in arr.iter().enumerate() {
        let s = item.as_str().ok_or_else(|| Error::Parse(format!("entry {n}: expected a string")))?;
        let r: Rational = s.parse().map_err(|_| Error::Parse(format!("entry {n}: bad rational {s:?}")))?;
        rows.push((n, r));
    }
    assemble(rows)
}

pub fn from_json(text: &str) -> Result<Series> {
    from_json_value(&serde_json::from_str(text)?)
}

fn assemble(mut rows: Vec<(usize, Rational)>) -> Result<Series> {
    if rows.is_empty() {
        return Err(Error::Parse("empty series".into()));
    }
    rows.sort_by_key(|r| r.0);
    for (i, (n, _)) in rows.iter().enumerate() {
        if *n != i {
            return Err(Error::Parse(format!("missing or repeated index near {i}")));
        }
    }
    let order = rows.len() - 1;
    Ok(Series::new(rows.into_iter().map(|r| r.1).collect(), order))
}
