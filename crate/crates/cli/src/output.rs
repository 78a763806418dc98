use std::io::Write;
use std::time::Duration;

use periodpoly::congruence::Assertion;
use serde_json::{json, Map, Value};

use crate::Common;

pub const SCHEMA_VERSION: u32 = 1;

/// Failure before any result exists: bad flags or violated preconditions.
#[derive(Debug)]
pub enum Outcome {
    Usage(String),
}

impl From<periodpoly::Error> for Outcome {
    fn from(e: periodpoly::Error) -> Self {
        Outcome::Usage(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> Outcome {
    Outcome::Usage(msg.into())
}

pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub results: Map<String, Value>,
    pub assertions: Vec<Assertion>,
    elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), params: Map::new(), results: Map::new(), assertions: Vec::new(), elapsed: None }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.into(), value.into());
    }

    pub fn check(&mut self, name: &str, pass: bool, witness: Value) {
        self.assertions.push(Assertion::new(name, pass, witness));
    }

    pub fn extend(&mut self, prefix: &str, assertions: Vec<Assertion>) {
        for a in assertions {
            let name = if prefix.is_empty() { a.name } else { format!("{prefix}.{}", a.name) };
            self.assertions.push(Assertion { name, ..a });
        }
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.elapsed = Some(d);
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> Value {
        let mut doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "assertions": self.assertions,
        });
        if let Some(d) = self.elapsed {
            doc["timings"] = json!({ "total_ms": d.as_secs_f64() * 1000.0 });
        }
        doc
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.params {
            out.push_str(&format!("  {k} = {}\n", plain(v)));
        }
        for (k, v) in &self.results {
            out.push_str(&format!("{k}: {}\n", plain(v)));
        }
        for a in &self.assertions {
            out.push_str(&format!("{} {}\n", if a.pass { "PASS" } else { "FAIL" }, a.name));
        }
        if let Some(d) = self.elapsed {
            out.push_str(&format!("elapsed: {:.3} s\n", d.as_secs_f64()));
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn emit(report: &Report, common: &Common) -> std::io::Result<()> {
    let text = if common.json {
        let mut s = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
        s.push('\n');
        s
    } else {
        report.to_text()
    };
    match &common.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}
