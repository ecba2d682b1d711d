//! Rendering of structured reports: `key: value` lines or JSON.

use serde_json::{json, Map, Value};
use tally_core::CountingSystem;

/// Flatten a JSON value into `key: value` lines. Nested keys are joined
/// with `.`, arrays of scalars are space-separated, other arrays are
/// indexed, and `null` renders as `-`.
pub fn key_values(value: &Value) -> String {
    let mut out = String::new();
    flatten("", value, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(_) | Value::Object(_) => None,
    }
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(prefix, k), v, out);
            }
        }
        Value::Array(items) => {
            if let Some(parts) = items.iter().map(scalar).collect::<Option<Vec<_>>>() {
                out.push_str(&format!("{prefix}: {}\n", parts.join(" ")));
            } else {
                for (i, v) in items.iter().enumerate() {
                    flatten(&join(prefix, &i.to_string()), v, out);
                }
            }
        }
        _ => out.push_str(&format!("{prefix}: {}\n", scalar(value).unwrap_or_default())),
    }
}

pub fn render(value: &Value, as_json: bool) -> String {
    if as_json {
        let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        key_values(value)
    }
}

/// A system as JSON: labels, base and one image list per map.
pub fn system_json(name: &str, sys: &CountingSystem) -> Value {
    let mut maps = Map::new();
    for (label, f) in sys.index_set().iter().zip(sys.maps()) {
        let images: Vec<&str> = f.table().iter().map(|&y| sys.label(y)).collect();
        maps.insert(label.clone(), json!(images));
    }
    json!({
        "system": name,
        "elements": sys.carrier().labels(),
        "base": sys.label(sys.base()),
        "maps": maps,
    })
}

/// An operation table as JSON, entries as labels.
pub fn table_json(symbol: &str, labels: &[String], table: &[Vec<usize>]) -> Value {
    let rows: Vec<Vec<&str>> = table
        .iter()
        .map(|row| row.iter().map(|&v| labels[v].as_str()).collect())
        .collect();
    json!({ "operation": symbol, "labels": labels, "table": rows })
}
