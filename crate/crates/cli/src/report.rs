//! Reports are written either as `key value` lines or as one JSON object
//! holding the same facts.

use serde_json::{json, Map, Value};

use tsskit::{Incentive, Vertex};

#[derive(Default)]
pub struct Report {
    lines: Vec<String>,
    object: Map<String, Value>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// A scalar fact: `key value`.
    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        let value = value.into();
        let shown = match &value {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        self.lines.push(format!("{key} {shown}"));
        self.object.insert(key.to_string(), value);
        self
    }

    /// A yes/no verdict: `key: true`.
    pub fn verdict(&mut self, key: &str, value: bool) -> &mut Self {
        self.lines.push(format!("{key}: {value}"));
        self.object.insert(key.to_string(), Value::Bool(value));
        self
    }

    /// One `tag v` line per vertex, 1-based; a JSON array under `key`.
    pub fn vertices(&mut self, key: &str, tag: &str, set: &[Vertex]) -> &mut Self {
        self.lines.extend(set.iter().map(|v| format!("{tag} {}", v + 1)));
        self.object.insert(key.to_string(), json!(set.iter().map(|v| v + 1).collect::<Vec<_>>()));
        self
    }

    /// One `s v value` line per vertex with positive incentive.
    pub fn incentive(&mut self, sigma: &Incentive) -> &mut Self {
        let mut pairs = Vec::new();
        for (v, &x) in sigma.values().iter().enumerate() {
            if x > 0 {
                self.lines.push(format!("s {} {x}", v + 1));
                pairs.push(json!([v + 1, x]));
            }
        }
        self.object.insert("sigma".to_string(), Value::Array(pairs));
        self
    }

    /// Free-form lines for text output only, mirrored under `key` in JSON.
    pub fn raw(&mut self, key: &str, lines: Vec<String>, value: Value) -> &mut Self {
        self.lines.extend(lines);
        self.object.insert(key.to_string(), value);
        self
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = Value::Object(self.object.clone()).to_string();
            s.push('\n');
            s
        } else {
            let mut s = self.lines.join("\n");
            s.push('\n');
            s
        }
    }
}
