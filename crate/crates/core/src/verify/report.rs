use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Family;
use crate::linalg::Rational;
use crate::measure::HaarConvention;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    /// A theorem under the pinned conventions; failure fails the run.
    Asserted,
    /// Data about an ambiguous claim; never fails the run.
    Recorded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Recorded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub name: String,
    pub kind: ClaimKind,
    pub status: Status,
    /// Whether the claim held; absent when it could not be evaluated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Largest exact residual seen, as a rational string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseId {
    pub id: String,
    pub group: String,
    pub family: Family,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<usize>>,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<usize>>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<usize>>,
    pub convention: HaarConvention,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: CaseId,
    pub claims: Vec<ClaimResult>,
    /// Wall-clock time; only filled in when requested, since it breaks byte-identical output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl VerificationReport {
    pub fn failed(&self) -> bool {
        self.claims.iter().any(|c| c.status == Status::Fail)
    }

    pub fn claim(&self, name: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub recorded: usize,
}

pub fn summarize(reports: &[VerificationReport]) -> Summary {
    let mut s = Summary { cases: reports.len(), ..Summary::default() };
    for c in reports.iter().flat_map(|r| &r.claims) {
        match c.status {
            Status::Pass => s.passed += 1,
            Status::Fail => s.failed += 1,
            Status::Recorded => s.recorded += 1,
        }
    }
    s
}

/// Process exit status: nonzero iff an asserted claim failed.
pub fn exit_code(reports: &[VerificationReport]) -> i32 {
    i32::from(reports.iter().any(VerificationReport::failed))
}

/// Collects claim outcomes for one case and checks them against the family manifest.
pub(crate) struct Recorder {
    manifest: &'static [(&'static str, ClaimKind)],
    results: BTreeMap<&'static str, ClaimResult>,
}

pub(crate) struct Outcome {
    pub holds: bool,
    pub detail: Option<String>,
    pub residual: Option<Rational>,
    pub witness: Option<Value>,
}

impl Outcome {
    pub fn holds(holds: bool) -> Self {
        Outcome { holds, detail: None, residual: None, witness: None }
    }

    pub fn with_witness(holds: bool, witness: Option<Value>) -> Self {
        Outcome { holds, detail: None, residual: None, witness }
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn residual(mut self, r: Rational) -> Self {
        self.residual = Some(r);
        self
    }

    pub fn witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        Outcome::holds(b)
    }
}

impl Recorder {
    pub fn new(manifest: &'static [(&'static str, ClaimKind)]) -> Self {
        Recorder { manifest, results: BTreeMap::new() }
    }

    fn kind_of(&self, name: &str) -> (&'static str, ClaimKind) {
        *self
            .manifest
            .iter()
            .find(|(n, _)| *n == name)
            .unwrap_or_else(|| panic!("claim {name:?} is not in the manifest"))
    }

    pub fn put(&mut self, name: &str, outcome: impl Into<Outcome>) {
        let (name, kind) = self.kind_of(name);
        let o = outcome.into();
        let status = match (kind, o.holds) {
            (ClaimKind::Recorded, _) => Status::Recorded,
            (ClaimKind::Asserted, true) => Status::Pass,
            (ClaimKind::Asserted, false) => Status::Fail,
        };
        let previous = self.results.insert(
            name,
            ClaimResult {
                name: name.to_string(),
                kind,
                status,
                holds: Some(o.holds),
                detail: o.detail,
                residual: o.residual.map(|r| r.to_string()),
                witness: o.witness,
            },
        );
        assert!(previous.is_none(), "claim {name:?} recorded twice");
    }

    /// Errors inside a claim count as a failure of that claim.
    pub fn put_result(&mut self, name: &str, outcome: crate::Result<Outcome>) {
        match outcome {
            Ok(o) => self.put(name, o),
            Err(e) => self.put(name, Outcome::holds(false).detail(format!("error: {e}"))),
        }
    }
}

impl Outcome {
    /// Holds iff `found == expected` entrywise, with the largest absolute difference as residual.
    pub fn compare(expected: &[Rational], found: &[Rational]) -> Self {
        use num_traits::{Signed, Zero};
        if expected.len() != found.len() {
            return Outcome::holds(false).detail(format!("length {} vs {}", expected.len(), found.len()));
        }
        let residual = expected
            .iter()
            .zip(found)
            .map(|(a, b)| (a - b).abs())
            .fold(Rational::zero(), |m, d| if d > m { d } else { m });
        let holds = residual.is_zero();
        let mut o = Outcome::holds(holds).residual(residual);
        if !holds {
            o = o.witness(serde_json::json!({ "expected": rationals(expected), "found": rationals(found) }));
        }
        o
    }

    /// Combines checks: holds iff all hold; keeps the largest residual and the first witness.
    pub fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Self {
        let mut acc = Outcome::holds(true);
        for o in outcomes {
            if let Some(r) = o.residual {
                if acc.residual.as_ref().is_none_or(|m| &r > m) {
                    acc.residual = Some(r);
                }
            }
            if !o.holds && acc.holds {
                acc.holds = false;
                acc.detail = o.detail;
                acc.witness = o.witness;
            }
        }
        acc
    }
}

pub(crate) fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(r.to_string())).collect())
}

impl Recorder {
    /// Marks every claim as not evaluable because the case violates a precondition.
    pub fn precondition_violated(&mut self, why: &str) {
        for &(name, kind) in self.manifest {
            self.results.entry(name).or_insert_with(|| ClaimResult {
                name: name.to_string(),
                kind,
                status: Status::Recorded,
                holds: None,
                detail: Some(format!("precondition violated: {why}")),
                residual: None,
                witness: None,
            });
        }
    }

    /// Fails every claim not yet evaluated, after an error in shared setup.
    pub fn abort(&mut self, why: &str) {
        for &(name, kind) in self.manifest {
            if !self.results.contains_key(name) {
                self.put(name, Outcome::holds(kind == ClaimKind::Recorded).detail(format!("error: {why}")));
            }
        }
    }

    pub fn finish(mut self) -> Vec<ClaimResult> {
        self.manifest
            .iter()
            .map(|&(name, kind)| {
                self.results.remove(name).unwrap_or_else(|| ClaimResult {
                    name: name.to_string(),
                    kind,
                    status: match kind {
                        ClaimKind::Asserted => Status::Fail,
                        ClaimKind::Recorded => Status::Recorded,
                    },
                    holds: None,
                    detail: Some("claim was not evaluated".into()),
                    residual: None,
                    witness: None,
                })
            })
            .collect()
    }
}
