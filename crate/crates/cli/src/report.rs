//! The report envelope; text output is rendered from the JSON form.

use serde::Serialize;
use serde_json::Value;

use crate::config::{Config, Format};

#[derive(Clone, Debug, Serialize)]
pub struct UniverseInfo {
    pub selector: String,
    pub size: usize,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Config,
    pub input: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub universe: Option<UniverseInfo>,
    pub pass: bool,
    pub result: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn render(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        match self.config.format {
            Format::Json => serde_json::to_string_pretty(&v).expect("report serializes"),
            Format::Text => {
                let mut out = String::new();
                text(&v, 0, &mut out);
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(a)
            if a.iter()
                .all(|x| x.as_array().is_some_and(|r| r.iter().all(Value::is_number))) =>
        {
            Some(serde_json::to_string(a).expect("matrix serializes"))
        }
        _ => None,
    }
}

fn text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{i}]\n"));
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}
