//! Verdict reports: one record per expected value, per-scenario and
//! aggregate summaries, JSON and text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::check::Status;
use crate::scenario::Origin;
use crate::serial::uint_str;
use crate::value::Value;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    pub anchor: String,
    pub origin: Origin,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    #[serde(with = "uint_str")]
    pub pass: u32,
    #[serde(with = "uint_str")]
    pub fail: u32,
    #[serde(with = "uint_str")]
    pub flagged: u32,
    #[serde(with = "uint_str")]
    pub errors: u32,
}

impl Summary {
    fn add(&mut self, other: &Self) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.flagged += other.flagged;
        self.errors += other.errors;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub kind: String,
    pub records: Vec<Record>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub summary: Summary,
    #[serde(with = "uint_str")]
    pub exit_code: u8,
}

impl ScenarioReport {
    /// Exit 1 on any failed record, 0 otherwise.
    #[must_use]
    pub fn from_records(scenario: &str, kind: &str, records: Vec<Record>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Flagged => summary.flagged += 1,
            }
        }
        let exit_code = u8::from(summary.fail > 0);
        Self { scenario: scenario.to_string(), kind: kind.to_string(), records, error: None, summary, exit_code }
    }

    /// Malformed input: exit 2.
    #[must_use]
    pub fn malformed(scenario: &str, kind: &str, message: String) -> Self {
        Self {
            scenario: scenario.to_string(),
            kind: kind.to_string(),
            records: Vec::new(),
            error: Some(message),
            summary: Summary { errors: 1, ..Summary::default() },
            exit_code: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub engine_version: String,
    pub scenarios: Vec<ScenarioReport>,
    pub summary: Summary,
    #[serde(with = "uint_str")]
    pub exit_code: u8,
}

impl Report {
    /// Aggregates in the given order; the exit code is the maximum.
    #[must_use]
    pub fn new(scenarios: Vec<ScenarioReport>) -> Self {
        let mut summary = Summary::default();
        for s in &scenarios {
            summary.add(&s.summary);
        }
        let exit_code = scenarios.iter().map(|s| s.exit_code).max().unwrap_or(0);
        Self { engine_version: ENGINE_VERSION.to_string(), scenarios, summary, exit_code }
    }

    /// Sorted keys, two-space indentation, trailing newline.
    #[must_use]
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    #[must_use]
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.scenarios {
            let _ = writeln!(out, "{} [{}] exit {}", s.scenario, s.kind, s.exit_code);
            if let Some(e) = &s.error {
                let _ = writeln!(out, "  error    {e}");
            }
            for r in &s.records {
                let _ = writeln!(
                    out,
                    "  {:<8} {}: expected {}, computed {} ({}; {})",
                    r.status.as_str(),
                    r.name,
                    r.expected,
                    r.computed,
                    r.origin.as_str(),
                    r.anchor
                );
            }
        }
        let t = &self.summary;
        let _ = writeln!(
            out,
            "{} scenarios: {} pass, {} fail, {} flagged, {} errors; exit {} (engine {})",
            self.scenarios.len(),
            t.pass,
            t.fail,
            t.flagged,
            t.errors,
            self.exit_code,
            self.engine_version
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(status: Status) -> Record {
        Record {
            name: "KW_sq".into(),
            expected: Value::from(1),
            computed: Value::from(1),
            status,
            anchor: "canonical square".into(),
            origin: Origin::Derived,
        }
    }

    #[test]
    fn json_round_trip_and_exit_codes() {
        let ok = ScenarioReport::from_records("a", "pipeline", vec![record(Status::Pass), record(Status::Flagged)]);
        let bad = ScenarioReport::from_records("b", "pipeline", vec![record(Status::Fail)]);
        let broken = ScenarioReport::malformed("c", "unknown", "line 1, column 2: eof".into());
        assert_eq!((ok.exit_code, bad.exit_code, broken.exit_code), (0, 1, 2));
        let report = Report::new(vec![ok, bad, broken]);
        assert_eq!(report.exit_code, 2);
        assert_eq!(report.summary, Summary { pass: 1, fail: 1, flagged: 1, errors: 1 });
        let json = report.to_json();
        assert_eq!(Report::from_json(&json).unwrap(), report);
        assert_eq!(Report::from_json(&json).unwrap().to_json(), json);
        assert!(!json.contains(": 1") && json.contains("\"exit_code\": \"2\""));
        assert!(report.to_text().contains("flagged"));
    }
}
