//! The JSON report envelope every verification command emits.
//!
//! Schema (stable across commands, see docs/report-schema.json):
//! `{command, inputs, verdict, witnesses, statistics, seed}` with
//! `verdict ∈ {"ok", "refuted", "error"}`. Key order inside objects is
//! sorted, so identical inputs (and seed) produce byte-identical reports.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportVerdict {
    Ok,
    Refuted,
    Error,
}

impl ReportVerdict {
    /// The exit-code contract: 0 holds, 1 refuted, 2 error.
    pub fn exit_code(&self) -> u8 {
        match self {
            ReportVerdict::Ok => 0,
            ReportVerdict::Refuted => 1,
            ReportVerdict::Error => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub verdict: ReportVerdict,
    pub witnesses: Value,
    pub statistics: Value,
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: Value::Object(Map::new()),
            verdict: ReportVerdict::Ok,
            witnesses: Value::Null,
            statistics: Value::Object(Map::new()),
            seed: None,
        }
    }

    pub fn inputs(mut self, inputs: Value) -> Self {
        self.inputs = inputs;
        self
    }

    pub fn verdict(mut self, verdict: ReportVerdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn witnesses(mut self, witnesses: Value) -> Self {
        self.witnesses = witnesses;
        self
    }

    pub fn statistics(mut self, statistics: Value) -> Self {
        self.statistics = statistics;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn error(command: &str, message: &str) -> Self {
        Self::new(command)
            .verdict(ReportVerdict::Error)
            .statistics(serde_json::json!({ "message": message }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn exit_code(&self) -> u8 {
        self.verdict.exit_code()
    }
}
