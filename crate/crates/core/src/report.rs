//! Structured outcomes of verification checks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Measured,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Measured => "measured",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Real(f64),
    Text(String),
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Real(v) => write!(f, "{v:e}"),
            Param::Text(v) => f.write_str(v),
        }
    }
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<u64> for Param {
    fn from(v: u64) -> Self {
        Param::Int(v as i64)
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Real(v)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_owned())
    }
}

impl From<String> for Param {
    fn from(v: String) -> Self {
        Param::Text(v)
    }
}

/// One named check. For asserted checks `worst_violation` is compared against
/// `tolerance`; for measured ones it holds the measured value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub worst_violation: f64,
    pub tolerance: Option<f64>,
    pub samples: u64,
    pub params: BTreeMap<String, Param>,
}

impl Check {
    /// Passes iff `worst_violation <= tolerance` (NaN fails).
    pub fn assert(name: impl Into<String>, worst_violation: f64, tolerance: f64, samples: u64) -> Self {
        let ok = worst_violation <= tolerance;
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            worst_violation,
            tolerance: Some(tolerance),
            samples,
            params: BTreeMap::new(),
        }
    }

    pub fn measured(name: impl Into<String>, value: f64, samples: u64) -> Self {
        Self {
            name: name.into(),
            status: Status::Measured,
            worst_violation: value,
            tolerance: None,
            samples,
            params: BTreeMap::new(),
        }
    }

    /// A check that could not be evaluated at all.
    pub fn errored(name: impl Into<String>, message: impl std::fmt::Display) -> Self {
        Self::assert(name, f64::INFINITY, 0.0, 0).param("error", message.to_string())
    }

    pub fn param(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    /// Re-evaluates the status against a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        if self.status != Status::Measured {
            self.tolerance = Some(tolerance);
            self.status = if self.worst_violation <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            };
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub params: BTreeMap<String, Param>,
    pub checks: Vec<Check>,
    pub tail_bounds: BTreeMap<String, f64>,
    /// Wall-clock time; kept out of the JSON document so reports replay byte for byte.
    #[serde(skip)]
    pub duration: Option<f64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            suite: suite.into(),
            seed,
            params: BTreeMap::new(),
            checks: Vec::new(),
            tail_bounds: BTreeMap::new(),
            duration: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.tail_bounds.extend(other.tail_bounds);
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,status,worst_violation,tolerance,samples,params\n");
        for c in &self.checks {
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "{},{},{},{:e},{},{},\"{}\"",
                self.suite,
                c.name,
                c.status.as_str(),
                c.worst_violation,
                c.tolerance.map(|t| format!("{t:e}")).unwrap_or_default(),
                c.samples,
                params.join(";").replace('"', "'"),
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {})", self.suite, self.seed);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tol = c.tolerance.map(|t| format!(" (tol {t:.1e})")).unwrap_or_default();
            let _ = writeln!(
                out,
                "  {:<8} {:<width$}  {:.3e}{}",
                c.status.as_str(),
                c.name,
                c.worst_violation,
                tol,
            );
        }
        let fails = self.failures().count();
        let worst = self
            .checks
            .iter()
            .filter(|c| c.status != Status::Measured)
            .max_by(|a, b| {
                let ra = a.worst_violation / a.tolerance.unwrap_or(1.0).max(f64::MIN_POSITIVE);
                let rb = b.worst_violation / b.tolerance.unwrap_or(1.0).max(f64::MIN_POSITIVE);
                ra.total_cmp(&rb)
            });
        let _ = write!(out, "{} checks, {} failed", self.checks.len(), fails);
        if let Some(w) = worst {
            let _ = write!(out, "; tightest: {} at {:.3e}", w.name, w.worst_violation);
        }
        if let Some(d) = self.duration {
            let _ = write!(out, "; {d:.2}s");
        }
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_from_tolerance() {
        assert_eq!(Check::assert("a", 1e-12, 1e-10, 1).status, Status::Pass);
        assert_eq!(Check::assert("a", 1e-9, 1e-10, 1).status, Status::Fail);
        assert_eq!(Check::assert("a", f64::NAN, 1e-10, 1).status, Status::Fail);
        assert_eq!(Check::measured("m", 5.0, 1).with_tolerance(1.0).status, Status::Measured);
        assert_eq!(Check::assert("a", 1e-9, 1e-10, 1).with_tolerance(1e-8).status, Status::Pass);
    }

    #[test]
    fn empty_report_serialises() {
        let r = VerificationReport::new("none", 3);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["checks"].as_array().unwrap().len(), 0);
        assert!(v.get("duration").is_none());
        assert_eq!(r.to_csv().lines().count(), 1);
        assert!(r.passed());
    }

    #[test]
    fn field_order_is_stable() {
        let mut r = VerificationReport::new("s", 1);
        r.push(Check::assert("x", 0.0, 1.0, 2).param("n", 4usize).param("p", 3.0));
        let j = r.to_json();
        let order = ["\"schema\"", "\"suite\"", "\"seed\"", "\"params\"", "\"checks\"", "\"tail_bounds\""];
        let pos: Vec<usize> = order.iter().map(|k| j.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(r.to_text().contains("1 checks, 0 failed"));
    }
}
