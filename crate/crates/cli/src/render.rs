//! Output formatting. Everything here is deterministic: terms come in
//! lexicographic exponent order and rows in increasing k.

use std::fmt::Write;

use gpot_core::algebra::{LaurentPoly, TSeries};
use gpot_core::period::PeriodSequence;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

pub type Column = (usize, u8, Vec<BigInt>);

pub fn poly_text(p: &LaurentPoly) -> String {
    format!("{p}\n")
}

/// `{"0": "1", "1": "0", ...}` with exact values as strings.
pub fn period_json(s: &PeriodSequence) -> Value {
    let mut m = Map::new();
    for (k, p) in s.pi.iter().enumerate() {
        m.insert(k.to_string(), Value::String(p.to_string()));
    }
    Value::Object(m)
}

pub fn period_csv(s: &PeriodSequence) -> String {
    let mut out = String::from("k,pi\n");
    for (k, p) in s.pi.iter().enumerate() {
        writeln!(out, "{k},{p}").unwrap();
    }
    out
}

pub fn period_text(s: &PeriodSequence) -> String {
    let width = s.pi.iter().map(|p| p.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    if let Some(fp) = &s.graph_fingerprint {
        writeln!(out, "# {fp}").unwrap();
    }
    for (k, p) in s.pi.iter().enumerate() {
        writeln!(out, "{k:>3}  {p:>width$}").unwrap();
    }
    out
}

fn header(c: &Column) -> String {
    format!("g{}e{}", c.0, c.1)
}

pub fn table_csv(columns: &[Column], order: usize) -> String {
    let mut out = String::from("k");
    for c in columns {
        write!(out, ",{}", header(c)).unwrap();
    }
    out.push('\n');
    for k in 0..=order {
        write!(out, "{k}").unwrap();
        for c in columns {
            write!(out, ",{}", c.2[k]).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn table_json(columns: &[Column]) -> Value {
    let mut m = Map::new();
    for c in columns {
        let vals: Vec<String> = c.2.iter().map(|p| p.to_string()).collect();
        m.insert(header(c), json!(vals));
    }
    Value::Object(m)
}

pub fn table_text(columns: &[Column], order: usize) -> String {
    let cells: Vec<Vec<String>> = (0..=order)
        .map(|k| {
            std::iter::once(k.to_string())
                .chain(columns.iter().map(|c| c.2[k].to_string()))
                .collect()
        })
        .collect();
    let head: Vec<String> = std::iter::once("k".to_string())
        .chain(columns.iter().map(header))
        .collect();
    let widths: Vec<usize> = (0..head.len())
        .map(|i| cells.iter().map(|r| r[i].len()).chain([head[i].len()]).max().unwrap())
        .collect();
    let mut out = String::new();
    for row in std::iter::once(&head).chain(&cells) {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        writeln!(out, "{}", line.join("  ")).unwrap();
    }
    out
}

/// `{"vars": [...], "series": [poly_0, poly_1, ...]}`
pub fn series_json(s: &TSeries<LaurentPoly>) -> Value {
    let series: Vec<Value> = s.coeffs().iter().map(|c| c.to_json_value()["terms"].clone()).collect();
    json!({ "vars": s.vars().names(), "series": series })
}
