//! Flat check records and their aggregation into one JSON report.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// How many of the slowest checks the summary lists.
pub const SLOWEST: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// What a check body returns; timing is added by [`CheckResult::run`].
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Outcome {
    pub fn from_witness(witness: Option<String>) -> Self {
        match witness {
            Some(w) => Outcome::Fail(w),
            None => Outcome::Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub check_id: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
    pub elapsed_ms: u64,
}

impl CheckResult {
    pub fn new(suite: &str, check_id: impl Into<String>, outcome: Outcome, elapsed_ms: u64) -> Self {
        let (status, residual_witness, note) = match outcome {
            Outcome::Pass => (Status::Pass, None, None),
            Outcome::Fail(w) => (Status::Fail, Some(w), None),
            Outcome::Skipped(why) => (Status::Skipped, None, Some(why)),
        };
        CheckResult {
            suite: suite.to_string(),
            check_id: check_id.into(),
            status,
            residual_witness,
            note,
            details: BTreeMap::new(),
            elapsed_ms,
        }
    }

    /// Time `body` and record its outcome.
    pub fn run(suite: &str, check_id: impl Into<String>, body: impl FnOnce() -> Outcome) -> Self {
        let start = Instant::now();
        let outcome = body();
        Self::new(suite, check_id, outcome, start.elapsed().as_millis() as u64)
    }

    pub fn with_detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("duplicate check_id {0}")]
    Duplicate(String),
    #[error("check {0} failed without a residual witness")]
    MissingWitness(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Slow {
    pub check_id: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub status: Status,
    pub slowest: Vec<Slow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
}

/// Aggregate results in the given order. Check ids must be unique and every
/// failure must carry a witness.
pub fn report_merge(results: Vec<CheckResult>) -> Result<Report, ReportError> {
    let mut seen = BTreeSet::new();
    for r in &results {
        if !seen.insert(r.check_id.as_str()) {
            return Err(ReportError::Duplicate(r.check_id.clone()));
        }
        if r.status == Status::Fail && r.residual_witness.is_none() {
            return Err(ReportError::MissingWitness(r.check_id.clone()));
        }
    }
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    let failed = count(Status::Fail);
    let mut by_time: Vec<&CheckResult> = results.iter().collect();
    // stable sort keeps input order among ties
    by_time.sort_by_key(|r| std::cmp::Reverse(r.elapsed_ms));
    let summary = Summary {
        total: results.len(),
        passed: count(Status::Pass),
        failed,
        skipped: count(Status::Skipped),
        status: if failed == 0 { Status::Pass } else { Status::Fail },
        slowest: by_time
            .iter()
            .take(SLOWEST)
            .map(|r| Slow {
                check_id: r.check_id.clone(),
                elapsed_ms: r.elapsed_ms,
            })
            .collect(),
    };
    Ok(Report { summary, checks: results })
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with every timing zeroed and the slowest list dropped, for
    /// byte comparisons across runs.
    pub fn without_timing(&self) -> Report {
        let mut out = self.clone();
        for c in &mut out.checks {
            c.elapsed_ms = 0;
        }
        out.summary.slowest.clear();
        out
    }
}
