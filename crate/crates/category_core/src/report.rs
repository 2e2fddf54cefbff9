//! Named numerical checks and witnesses shared by all validators.

use num_complex::Complex64 as C64;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        Check { name: name.into(), residual, threshold, pass: residual <= threshold }
    }

    /// A check that passes when `value >= -threshold`; the residual is the violation.
    pub fn lower_bound(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::new(name, (-value).max(0.0), threshold)
    }
}

/// Data exhibiting a failure: a named vector, optionally tagged with a label.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub check: String,
    pub description: String,
    pub values: Vec<C64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub witnesses: Vec<Witness>,
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn witness(&mut self, check: &str, description: impl Into<String>, values: Vec<C64>) {
        self.witnesses.push(Witness { check: check.into(), description: description.into(), values });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.witnesses.extend(other.witnesses);
    }
}
