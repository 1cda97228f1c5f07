//! Ordered reports with text and JSON renderings carrying the same data.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Str(String),
    Bool(bool),
    Int(i64),
    List(Vec<Value>),
    Map(Report),
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}
impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}
impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}
impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as i64)
    }
}
impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n)
    }
}
impl From<Report> for Value {
    fn from(r: Report) -> Self {
        Value::Map(r)
    }
}
impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

/// Summary lines come first in both renderings, followed by entries in
/// insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub summary: Vec<String>,
    pub entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.entries.push((key.to_string(), v.into()));
        self
    }

    pub fn push(&mut self, key: &str, v: impl Into<Value>) {
        self.entries.push((key.to_string(), v.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.summary {
            out.push_str(s);
            out.push('\n');
        }
        write_entries(&mut out, &self.entries, 0);
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Str(s) => Some(s.clone()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Int(n) => Some(n.to_string()),
        Value::List(items) => items.iter().map(scalar).collect::<Option<Vec<_>>>().map(|xs| {
            // matrix rows are themselves comma-separated
            let sep = if xs.iter().any(|x| x.contains(", ")) { "; " } else { ", " };
            format!("[{}]", xs.join(sep))
        }),
        Value::Map(_) => None,
    }
}

fn write_entries(out: &mut String, entries: &[(String, Value)], depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in entries {
        if let Some(s) = scalar(v) {
            out.push_str(&format!("{pad}{k}: {s}\n"));
            continue;
        }
        out.push_str(&format!("{pad}{k}:\n"));
        match v {
            Value::Map(r) => write_report(out, r, depth + 1),
            Value::List(items) => {
                for (i, item) in items.iter().enumerate() {
                    match (scalar(item), item) {
                        (Some(s), _) => out.push_str(&format!("{pad}  - {s}\n")),
                        (None, Value::Map(r)) => {
                            out.push_str(&format!("{pad}  [{i}]\n"));
                            write_report(out, r, depth + 2);
                        }
                        (None, other) => {
                            out.push_str(&format!("{pad}  [{i}]\n"));
                            write_entries(out, &[(String::new(), other.clone())], depth + 2);
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }
}

fn write_report(out: &mut String, r: &Report, depth: usize) {
    let pad = "  ".repeat(depth);
    for s in &r.summary {
        out.push_str(&format!("{pad}{s}\n"));
    }
    write_entries(out, &r.entries, depth);
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Str(x) => s.serialize_str(x),
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Int(n) => s.serialize_i64(*n),
            Value::List(items) => {
                let mut seq = s.serialize_seq(Some(items.len()))?;
                for it in items {
                    seq.serialize_element(it)?;
                }
                seq.end()
            }
            Value::Map(r) => r.serialize(s),
        }
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let extra = usize::from(!self.summary.is_empty());
        let mut m = s.serialize_map(Some(self.entries.len() + extra))?;
        if !self.summary.is_empty() {
            m.serialize_entry("summary", &self.summary)?;
        }
        for (k, v) in &self.entries {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings_keep_order() {
        let r = Report::new()
            .line("in W(A,R): true")
            .with("zeta", 1usize)
            .with("alpha", vec!["a", "b"])
            .with("rows", vec!["1, 0", "0, 1"])
            .with("nested", Report::new().with("ok", true));
        assert_eq!(r.to_text(), "in W(A,R): true\nzeta: 1\nalpha: [a, b]\nrows: [1, 0; 0, 1]\nnested:\n  ok: true\n");
        let j: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(j["summary"][0], "in W(A,R): true");
        assert_eq!(j["nested"]["ok"], true);
        let json = r.to_json();
        let keys: Vec<&str> = json.lines().filter_map(|l| l.trim().split('"').nth(1)).collect();
        assert_eq!(&keys[..3], &["summary", "in W(A,R): true", "zeta"]);
    }
}
