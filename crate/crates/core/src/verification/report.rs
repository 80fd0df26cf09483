use std::time::Instant;

use serde::Serialize;

use crate::error::Error;
use crate::model::{StateId, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Enough to replay a failure: where it happened and the integers that disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub family: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    /// The offending assignment (bits, for Boolean instances).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<StateId>>,
    /// Decoded expanded states, for Boolean instances.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decoded: Option<Vec<StateId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<Value>,
    pub detail: String,
}

impl Counterexample {
    pub fn new(family: &str, n: usize, detail: impl Into<String>) -> Self {
        Counterexample {
            family: family.to_string(),
            n,
            step: None,
            assignment: None,
            decoded: None,
            expected: None,
            actual: None,
            detail: detail.into(),
        }
    }

    pub fn from_error(family: &str, n: usize, e: Error) -> Self {
        Counterexample::new(family, n, e.to_string())
    }

    pub fn at_step(mut self, step: usize) -> Self {
        self.step = Some(step);
        self
    }

    pub fn assignment(mut self, x: &[StateId]) -> Self {
        self.assignment = Some(x.to_vec());
        self
    }

    pub fn decoded(mut self, x: &[StateId]) -> Self {
        self.decoded = Some(x.to_vec());
        self
    }

    pub fn values(mut self, expected: Value, actual: Value) -> Self {
        self.expected = Some(expected);
        self.actual = Some(actual);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub family: String,
    pub n_max: usize,
    pub verdict: Verdict,
    /// Number of instances, assignments or steps examined.
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

/// Running totals a check accumulates before its verdict.
#[derive(Debug, Default)]
pub struct Tally {
    pub cases: u64,
    pub notes: Vec<String>,
}

pub(crate) fn timed<F>(check: &str, family: &str, n_max: usize, f: F) -> CheckReport
where
    F: FnOnce(&mut Tally) -> Result<(), Counterexample>,
{
    let t0 = Instant::now();
    let mut tally = Tally::default();
    let outcome = f(&mut tally);
    CheckReport {
        check: check.to_string(),
        family: family.to_string(),
        n_max,
        verdict: if outcome.is_ok() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        cases: tally.cases,
        counterexample: outcome.err(),
        notes: tally.notes,
        seconds: t0.elapsed().as_secs_f64(),
    }
}
