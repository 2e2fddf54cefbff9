//! Machine-readable command reports.

use std::collections::BTreeMap;

use category_core::Report;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::canonical::{lossy_f64, Complex, FORMAT_VERSION};
use crate::docs::DocRef;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub name: String,
    #[serde(with = "lossy_f64")]
    pub residual: f64,
    #[serde(with = "lossy_f64")]
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub check: String,
    pub description: String,
    pub values: Vec<Complex>,
}

/// Outcome of one command. `pass` holds iff every check passes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliReport {
    pub format_version: u32,
    pub kind: String,
    pub command: String,
    pub inputs: Vec<DocRef>,
    pub outputs: Vec<DocRef>,
    pub seed: u64,
    #[serde(with = "lossy_f64")]
    pub tolerance: f64,
    pub checks: Vec<CheckDoc>,
    pub witnesses: Vec<WitnessDoc>,
    /// Named result tables, e.g. fiber label to norm.
    pub tables: BTreeMap<String, Value>,
    pub pass: bool,
    pub wall_time_ms: f64,
}

impl CliReport {
    pub fn new(command: &str, seed: u64, tolerance: f64) -> Self {
        CliReport {
            format_version: FORMAT_VERSION,
            kind: "report".into(),
            command: command.into(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            seed,
            tolerance,
            checks: Vec::new(),
            witnesses: Vec::new(),
            tables: BTreeMap::new(),
            pass: true,
            wall_time_ms: 0.0,
        }
    }

    pub fn absorb(&mut self, r: &Report) {
        for c in &r.checks {
            self.checks.push(CheckDoc { name: c.name.clone(), residual: c.residual, threshold: c.threshold, pass: c.pass });
        }
        for w in &r.witnesses {
            self.witnesses.push(WitnessDoc { check: w.check.clone(), description: w.description.clone(), values: w.values.iter().map(|&z| z.into()).collect() });
        }
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    /// A pass/fail check with no residual scale.
    pub fn flag(&mut self, name: &str, ok: bool) {
        self.checks.push(CheckDoc { name: name.into(), residual: if ok { 0.0 } else { 1.0 }, threshold: 0.0, pass: ok });
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    pub fn table(&mut self, name: &str, value: impl Serialize) {
        self.tables.insert(name.into(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    /// The report with the wall time zeroed; equal inputs give equal values.
    pub fn without_timing(&self) -> Self {
        CliReport { wall_time_ms: 0.0, ..self.clone() }
    }

    /// One line per check, then the verdict.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{:<4} {:<32} residual {:.3e} (threshold {:.1e})\n",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.residual,
                c.threshold
            ));
        }
        for w in &self.witnesses {
            out.push_str(&format!("witness [{}]: {}\n", w.check, w.description));
        }
        for (k, v) in &self.tables {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out.push_str(&format!("{}: {}\n", self.command, if self.pass { "pass" } else { "fail" }));
        out
    }
}
