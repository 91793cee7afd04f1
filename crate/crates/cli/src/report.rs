//! Command reports, rendered as text or JSON.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOLERANCE: f64 = 1e-9;

/// Files read by a command, hashed in the order they were read.
#[derive(Clone, Debug, Default, Serialize)]
pub struct InputLog {
    pub files: Vec<InputFile>,
    pub digest: String,
    #[serde(skip)]
    hasher: Sha256,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

impl InputLog {
    pub fn record(&mut self, path: &Path, bytes: &[u8]) {
        let sha256 = format!("{:x}", Sha256::digest(bytes));
        self.hasher.update(sha256.as_bytes());
        self.files.push(InputFile { path: path.display().to_string(), sha256 });
    }

    fn finish(&mut self) {
        self.digest = format!("{:x}", self.hasher.clone().finalize());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub holds: bool,
    /// Margin by which the inequality holds; negative when it fails.
    pub slack: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: InputLog,
    pub results: Vec<NamedValue>,
    pub assertions: Vec<Assertion>,
    pub tolerance: f64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), inputs: InputLog::default(), results: Vec::new(), assertions: Vec::new(), tolerance: TOLERANCE }
    }

    pub fn value(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.results.push(NamedValue { name: name.into(), value: value.into(), provenance: None });
        self
    }

    pub fn value_with(&mut self, name: &str, value: impl Into<Value>, provenance: Value) -> &mut Self {
        self.results.push(NamedValue { name: name.into(), value: value.into(), provenance: Some(provenance) });
        self
    }

    /// Records `slack >= -tolerance` as an assertion.
    pub fn assert_slack(&mut self, name: &str, slack: f64) -> &mut Self {
        let holds = slack >= -self.tolerance;
        self.assertions.push(Assertion { name: name.into(), holds, slack });
        self
    }

    pub fn assert_flag(&mut self, name: &str, holds: bool) -> &mut Self {
        self.assertions.push(Assertion { name: name.into(), holds, slack: if holds { 0.0 } else { -1.0 } });
        self
    }

    pub fn all_hold(&self) -> bool {
        self.assertions.iter().all(|a| a.holds)
    }

    pub fn seal(mut self, inputs: InputLog) -> Self {
        self.inputs = inputs;
        self.inputs.finish();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        let width = self.results.iter().map(|r| r.name.len()).chain(self.assertions.iter().map(|a| a.name.len())).max().unwrap_or(0);
        for r in &self.results {
            let _ = writeln!(out, "  {:width$}  {}", r.name, render(&r.value));
        }
        if !self.assertions.is_empty() {
            let _ = writeln!(out, "checks (tolerance {:e})", self.tolerance);
            for a in &self.assertions {
                let verdict = if a.holds { "ok  " } else { "FAIL" };
                let _ = writeln!(out, "  {verdict} {:width$}  slack {:.3e}", a.name, a.slack);
            }
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.12}"),
            _ => n.to_string(),
        },
        Value::Array(items) => format!("[{}]", items.iter().map(render).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
