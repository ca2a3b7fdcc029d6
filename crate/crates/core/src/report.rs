//! Structured pass/fail records emitted by every verifier.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::algebra::text::{format_word, monomial_factors, VarNames};
use crate::algebra::SuperElement;
use crate::quadrature::NumericSuperValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub word: String,
    pub lhs: String,
    pub rhs: String,
}

/// One JSON-lines record: `{"check","params","status","max_rel_error","witness","wall_time_ms"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub max_rel_error: f64,
    pub witness: Option<Witness>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Pass or vacuous.
    pub fn ok(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn observed(&self, key: &str) -> Option<&Value> {
        self.params.get("observed").and_then(|o| o.get(key))
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Accumulates comparisons for one check. Merging two tallies keeps the larger
/// error and the first witness, so trials can be folded in any grouping.
#[derive(Clone, Debug)]
pub struct ReportBuilder {
    check: String,
    tolerance: f64,
    params: Map<String, Value>,
    observed: Map<String, Value>,
    max_rel_error: f64,
    witness: Option<Witness>,
    failed: bool,
    vacuous: Option<String>,
    comparisons: usize,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(check: &str, tolerance: f64) -> Self {
        ReportBuilder {
            check: check.to_string(),
            tolerance,
            params: Map::new(),
            observed: Map::new(),
            max_rel_error: 0.0,
            witness: None,
            failed: false,
            vacuous: None,
            comparisons: 0,
            started: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn observe(&mut self, key: &str, value: impl Into<Value>) {
        self.observed.insert(key.to_string(), value.into());
    }

    pub fn comparisons(&self) -> usize {
        self.comparisons
    }

    fn record(&mut self, err: f64, witness: impl FnOnce() -> Witness) {
        self.comparisons += 1;
        let bad = !(err <= self.tolerance);
        if bad && self.witness.is_none() {
            self.witness = Some(witness());
        }
        if bad {
            self.failed = true;
        }
        if err > self.max_rel_error || err.is_nan() {
            self.max_rel_error = err;
        }
    }

    /// Exact comparison of two elements.
    pub fn compare_exact(&mut self, label: &str, lhs: &SuperElement, rhs: &SuperElement) {
        if lhs == rhs {
            self.record(0.0, unreachable_witness);
            return;
        }
        let (err, mono) = lhs.max_rel_deviation(rhs);
        let n = lhs.signature().n;
        // Exact checks fail on any difference, even one below f64 resolution.
        let err = if err == 0.0 { f64::MIN_POSITIVE } else { err };
        self.comparisons += 1;
        self.failed = true;
        if err > self.max_rel_error {
            self.max_rel_error = err;
        }
        if self.witness.is_none() {
            let mono = mono.expect("nonzero difference has a word");
            let word = monomial_factors(&mono, n, &VarNames::STANDARD).join("*");
            let coeff = |e: &SuperElement| {
                e.coefficient(&mono)
                    .map(|c| c.to_f64().to_string())
                    .unwrap_or_else(|| "0".into())
            };
            self.witness = Some(Witness {
                word: format!("{label}: {}", if word.is_empty() { "1".into() } else { word }),
                lhs: format!("{} (coefficient {})", lhs, coeff(lhs)),
                rhs: format!("{} (coefficient {})", rhs, coeff(rhs)),
            });
        }
    }

    /// Word-wise relative comparison `|lhs - rhs| / (1 + |rhs|)`.
    pub fn compare_numeric(&mut self, label: &str, lhs: &NumericSuperValue, rhs: &NumericSuperValue) {
        let (err, word) = lhs.max_rel_error(rhs);
        let n = lhs.weyl_len().max(rhs.weyl_len()) / 2;
        self.record(err, || {
            let w = word
                .as_ref()
                .map(|w| format_word(w, n, &VarNames::STANDARD))
                .unwrap_or_default();
            let at = |v: &NumericSuperValue| {
                word.as_ref()
                    .map(|w| v.coefficient(w).to_string())
                    .unwrap_or_else(|| "0".into())
            };
            Witness {
                word: format!("{label}: {}", if w.is_empty() { "1".into() } else { w }),
                lhs: at(lhs),
                rhs: at(rhs),
            }
        });
    }

    /// A scalar residual compared against the tolerance.
    pub fn compare_scalar(&mut self, label: &str, residual: f64) {
        self.record(residual.abs(), || Witness {
            word: label.to_string(),
            lhs: residual.to_string(),
            rhs: "0".into(),
        });
    }

    /// Records a failed property that has no numeric residual.
    pub fn fail(&mut self, label: &str, detail: impl Into<String>) {
        self.comparisons += 1;
        self.failed = true;
        if self.witness.is_none() {
            self.witness = Some(Witness {
                word: label.to_string(),
                lhs: detail.into(),
                rhs: String::new(),
            });
        }
    }

    pub fn mark_vacuous(&mut self, reason: impl Into<String>) {
        self.vacuous = Some(reason.into());
    }

    pub fn merge(&mut self, other: ReportBuilder) {
        self.comparisons += other.comparisons;
        self.failed |= other.failed;
        if other.max_rel_error > self.max_rel_error || other.max_rel_error.is_nan() {
            self.max_rel_error = other.max_rel_error;
        }
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        for (k, v) in other.observed {
            self.observed.entry(k).or_insert(v);
        }
    }

    pub fn finish(mut self) -> VerificationReport {
        let status = if self.failed {
            Status::Fail
        } else if let Some(reason) = self.vacuous.take() {
            self.observed.insert("vacuous_reason".into(), reason.into());
            Status::Vacuous
        } else {
            Status::Pass
        };
        self.params.insert("tolerance".into(), self.tolerance.into());
        if !self.observed.is_empty() {
            self.params
                .insert("observed".into(), Value::Object(self.observed));
        }
        VerificationReport {
            check: self.check,
            params: self.params,
            status,
            max_rel_error: self.max_rel_error,
            witness: self.witness,
            wall_time_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Folds several reports of one check into a single record. Each part's
/// parameters and status are kept under `params.cases`.
pub fn combine(check: &str, params: Map<String, Value>, parts: Vec<VerificationReport>) -> VerificationReport {
    let status = if parts.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if parts.iter().any(|r| r.status == Status::Pass) {
        Status::Pass
    } else {
        Status::Vacuous
    };
    let mut params = params;
    let cases: Vec<Value> = parts
        .iter()
        .map(|r| {
            let mut case = r.params.clone();
            case.insert("status".into(), serde_json::to_value(r.status).expect("status serializes"));
            case.insert("max_rel_error".into(), r.max_rel_error.into());
            Value::Object(case)
        })
        .collect();
    params.insert("cases".into(), Value::Array(cases));
    VerificationReport {
        check: check.to_string(),
        params,
        status,
        max_rel_error: parts.iter().map(|r| r.max_rel_error).fold(0.0, f64::max),
        witness: parts
            .iter()
            .find(|r| r.status == Status::Fail)
            .and_then(|r| r.witness.clone()),
        wall_time_ms: parts.iter().map(|r| r.wall_time_ms).sum(),
    }
}

fn unreachable_witness() -> Witness {
    Witness {
        word: String::new(),
        lhs: String::new(),
        rhs: String::new(),
    }
}
