//! Command reports in text and JSON form.
//!
//! Floats are rounded to 12 significant digits once, before rendering, so
//! both modes print the same numbers.

use std::fmt::Write as _;

use gfusion_core::Tolerance;
use serde_json::{Map, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to `SIGNIFICANT_DIGITS` significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

#[derive(Debug, Clone)]
pub enum Field {
    Num(f64),
    /// Printed in scientific notation in text mode.
    Residual(f64),
    Int(usize),
    Bool(bool),
    Text(String),
    Nums(Vec<f64>),
    Group(Vec<(&'static str, Field)>),
}

impl Field {
    fn to_json(&self) -> Value {
        let num = |x: f64| {
            serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
        };
        match self {
            Field::Num(x) | Field::Residual(x) => num(*x),
            Field::Int(i) => Value::from(*i),
            Field::Bool(b) => Value::Bool(*b),
            Field::Text(s) => Value::String(s.clone()),
            Field::Nums(xs) => Value::Array(xs.iter().map(|&x| num(x)).collect()),
            Field::Group(fields) => group_json(fields),
        }
    }

    fn write_text(&self, key: &str, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let value = match self {
            Field::Group(fields) => {
                let _ = writeln!(out, "{pad}{key}:");
                for (k, f) in fields {
                    f.write_text(k, depth + 1, out);
                }
                return;
            }
            Field::Num(x) => text_num(*x),
            Field::Residual(x) => text_residual(*x),
            Field::Int(i) => i.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
            Field::Nums(xs) => {
                let items: Vec<String> = xs.iter().map(|&x| text_num(x)).collect();
                format!("[{}]", items.join(", "))
            }
        };
        let _ = writeln!(out, "{pad}{key}: {value}");
    }
}

fn text_num(x: f64) -> String {
    if x.is_finite() {
        format!("{}", round_sig(x))
    } else {
        "inf".into()
    }
}

fn text_residual(x: f64) -> String {
    if x.is_finite() {
        format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
    } else {
        "inf".into()
    }
}

fn group_json(fields: &[(&'static str, Field)]) -> Value {
    let mut map = Map::new();
    for (k, f) in fields {
        map.insert((*k).to_string(), f.to_json());
    }
    Value::Object(map)
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub input_digest: String,
    pub tolerance: Tolerance,
    pub results: Vec<(&'static str, Field)>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        map.insert("command".into(), Value::from(self.command));
        map.insert("input_digest".into(), Value::from(self.input_digest.clone()));
        map.insert(
            "tolerance".into(),
            group_json(&[
                ("rank_rel", Field::Num(self.tolerance.rank_rel)),
                ("residual_abs", Field::Num(self.tolerance.residual_abs)),
            ]),
        );
        map.insert("results".into(), group_json(&self.results));
        let mut out = serde_json::to_string_pretty(&Value::Object(map)).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "input_digest: {}", self.input_digest);
        let _ = writeln!(
            out,
            "tolerance: rank_rel={} residual_abs={}",
            text_residual(self.tolerance.rank_rel),
            text_residual(self.tolerance.residual_abs)
        );
        for (k, f) in &self.results {
            f.write_text(k, 0, &mut out);
        }
        out
    }
}
