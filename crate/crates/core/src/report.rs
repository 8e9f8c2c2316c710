//! Machine-readable verification reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::Error;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ResourceExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::ResourceExceeded => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub parameters: Map<String, Value>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub status: Status,
    /// Only filled in when timing is requested, so that reports stay
    /// byte-identical across runs.
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            parameters: Map::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            status: Status::Pass,
            wall_time_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.into(), to_value(value));
        self
    }

    /// Records a check whose verdict is decided by the caller.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        expected: impl Serialize,
        computed: impl Serialize,
        pass: bool,
    ) -> bool {
        self.checks.push(Check {
            name: name.into(),
            expected: to_value(expected),
            computed: to_value(computed),
            pass,
        });
        if !pass && self.status == Status::Pass {
            self.status = Status::Fail;
        }
        pass
    }

    /// Records a check that passes iff both sides serialize identically.
    pub fn check_eq(
        &mut self,
        name: impl Into<String>,
        expected: impl Serialize,
        computed: impl Serialize,
    ) -> bool {
        let (e, c) = (to_value(expected), to_value(computed));
        let pass = e == c;
        self.check(name, e, c, pass)
    }

    /// Records an error raised while computing a check. Resource errors
    /// end the report; anything else is a failed check.
    pub fn error(&mut self, name: impl Into<String>, expected: impl Serialize, err: &Error) {
        if matches!(err, Error::Resource { .. }) {
            self.notes.push(format!("stopped: {err}"));
            self.status = Status::ResourceExceeded;
        } else {
            self.check(name, expected, json!({ "error": err.to_string() }), false);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn is_stopped(&self) -> bool {
        self.status == Status::ResourceExceeded
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Plain table for terminals.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} [{}]\n", self.command, status_word(self.status));
        for (k, v) in &self.parameters {
            out.push_str(&format!("  {k} = {}\n", compact(v)));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "  {} {}: expected {}, computed {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                compact(&c.expected),
                compact(&c.computed)
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!("  wall time: {ms} ms\n"));
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::ResourceExceeded => "RESOURCE CAP EXCEEDED",
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Stopwatch honoring an optional time budget.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    start: Instant,
    limit_ms: Option<u64>,
}

impl Budget {
    pub fn new(limit_ms: Option<u64>) -> Self {
        Self {
            start: Instant::now(),
            limit_ms,
        }
    }

    pub fn unlimited() -> Self {
        Self::new(None)
    }

    pub fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }

    /// A resource error once the budget is spent.
    pub fn check(&self) -> Result<(), Error> {
        match self.limit_ms {
            Some(limit) if self.elapsed_ms() > limit => Err(Error::Resource {
                what: "time budget (ms)".into(),
                cap: limit,
            }),
            _ => Ok(()),
        }
    }
}

/// JSON Schema (draft 2020-12) of [`Report`].
pub fn schema() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": "urn:polar:report-schema:1",
        "title": "Verification report",
        "type": "object",
        "required": ["schema_version", "command", "parameters", "checks", "notes", "status", "wall_time_ms"],
        "additionalProperties": false,
        "properties": {
            "schema_version": { "const": SCHEMA_VERSION },
            "command": { "type": "string" },
            "parameters": { "type": "object" },
            "checks": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["name", "expected", "computed", "pass"],
                    "additionalProperties": false,
                    "properties": {
                        "name": { "type": "string" },
                        "expected": {},
                        "computed": {},
                        "pass": { "type": "boolean" }
                    }
                }
            },
            "notes": { "type": "array", "items": { "type": "string" } },
            "status": { "enum": ["pass", "fail", "resource-exceeded"] },
            "wall_time_ms": { "type": ["integer", "null"], "minimum": 0 }
        }
    })
}
