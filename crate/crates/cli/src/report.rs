//! Machine-readable reports.
//!
//! Reports serialize to UTF-8 JSON with struct fields in declaration order
//! and map keys sorted. Every float is written with 17 significant digits
//! (`{:.16e}`) so that two runs with the same inputs produce identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A float serialized with a fixed 17-significant-digit format. Non-finite
/// values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Real {
    pub fn format(self) -> String {
        if self.0.is_finite() {
            format!("{:.16e}", self.0)
        } else {
            "null".to_string()
        }
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(self.format()).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamsEcho {
    pub m: usize,
    pub a: Real,
    /// Exact `ħ` as `p/q`.
    pub hbar: String,
    pub even_m_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// True when the underlying property is meant to fail (negative controls).
    pub expected_fail: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub params: ParamsEcho,
    pub seed: Option<u64>,
    pub n_samples: usize,
    pub tolerances: BTreeMap<String, Real>,
    pub residuals: BTreeMap<String, Real>,
    pub counts: BTreeMap<String, u64>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    /// Recomputes `pass` as the conjunction of all checks.
    pub fn finalize(mut self) -> Self {
        self.pass = self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.get(name).map(|r| r.0)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} (schema {}, genosc {})",
            self.command, self.schema_version, self.tool_version
        );
        let _ = writeln!(
            out,
            "m = {}  a = {}  hbar = {}  seed = {}  samples = {}",
            self.params.m,
            self.params.a.0,
            self.params.hbar,
            self.seed.map_or_else(|| "-".to_string(), |s| s.to_string()),
            self.n_samples
        );
        for (name, value) in &self.residuals {
            let tol = self
                .tolerances
                .get(name)
                .map_or_else(|| "-".to_string(), |t| t.format());
            let _ = writeln!(out, "  {:<28} {:>24}  tol {}", name, value.format(), tol);
        }
        for (name, value) in &self.counts {
            let _ = writeln!(out, "  {name:<28} {value:>24}");
        }
        for check in &self.checks {
            let tag = match (check.pass, check.expected_fail) {
                (true, false) => "PASS",
                (true, true) => "PASS (expected-fail)",
                (false, _) => "FAIL",
            };
            let _ = writeln!(out, "  [{tag}] {}: {}", check.name, check.detail);
        }
        let _ = writeln!(out, "overall: {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

/// Serializes with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

/// Largest value, with NaN treated as infinitely bad.
pub fn max_residual<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, |acc, v| {
        if v.is_nan() {
            f64::INFINITY
        } else {
            acc.max(v)
        }
    })
}
