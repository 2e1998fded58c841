//! Property-check ledger attached to every command.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub value: f64,
    pub tolerance: f64,
    /// The statement being tested.
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Report { schema_version: SCHEMA_VERSION, command: command.into(), config, results: Value::Null, checks: Vec::new() }
    }

    /// Passes when `value ≤ tolerance`; NaN fails.
    pub fn at_most(&mut self, name: &str, value: f64, tolerance: f64, anchor: &str) -> bool {
        self.record(name, value, tolerance, anchor, value <= tolerance)
    }

    /// Passes when `value ≥ tolerance`.
    pub fn at_least(&mut self, name: &str, value: f64, tolerance: f64, anchor: &str) -> bool {
        self.record(name, value, tolerance, anchor, value >= tolerance)
    }

    /// Passes when `value == expected`.
    pub fn equals(&mut self, name: &str, value: usize, expected: usize, anchor: &str) -> bool {
        self.record(name, value as f64, expected as f64, anchor, value == expected)
    }

    pub fn holds(&mut self, name: &str, ok: bool, anchor: &str) -> bool {
        self.record(name, if ok { 1.0 } else { 0.0 }, 1.0, anchor, ok)
    }

    pub fn record(&mut self, name: &str, value: f64, tolerance: f64, anchor: &str, ok: bool) -> bool {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: name.into(), status, value, tolerance, anchor: anchor.into() });
        ok
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Checks of `other` appended with `prefix/`; results are kept under `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.checks.push(c);
        }
        if !self.results.is_object() {
            self.results = Value::Object(Default::default());
        }
        self.results[prefix] = other.results;
    }
}
