use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Info,
}

impl Outcome {
    pub fn from_check(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Fail => 1,
            Outcome::Pass | Outcome::Info => 0,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Info => "info",
        }
    }
}

/// Result of one subcommand: a human-readable body plus a JSON payload.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub outcome: Outcome,
    pub body: String,
    pub payload: Value,
    /// A budget ran out; the payload holds partial results.
    pub incomplete: bool,
    pub elapsed: Option<Duration>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    outcome: Outcome,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    incomplete: bool,
    payload: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: impl Into<String>, outcome: Outcome, body: String, payload: Value) -> Self {
        Report {
            command: command.into(),
            outcome,
            body,
            payload,
            incomplete: false,
            elapsed: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.body);
        if !out.is_empty() && !out.ends_with('\n') {
            out.push('\n');
        }
        let _ = write!(out, "result: {}", self.outcome.label());
        if self.incomplete {
            out.push_str(" (incomplete: budget exhausted)");
        }
        out.push('\n');
        if let Some(e) = self.elapsed {
            let _ = writeln!(out, "elapsed: {} ms", e.as_millis());
        }
        out
    }

    pub fn render_json(&self) -> String {
        let env = Envelope {
            command: &self.command,
            outcome: self.outcome,
            incomplete: self.incomplete,
            payload: &self.payload,
            elapsed_ms: self.elapsed.map(|e| e.as_millis()),
        };
        let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
        s.push('\n');
        s
    }
}
