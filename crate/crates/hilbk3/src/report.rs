//! Pass/fail reports produced by the verification routines.

use crate::coeff::QSeries;
use std::fmt;

/// Outcome of a single named identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    /// What was checked.
    pub name: String,
    /// Whether it held.
    pub ok: bool,
    /// Supporting detail or the first discrepancy.
    pub detail: String,
}

/// A list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// The checks in the order they were run.
    pub checks: Vec<Check>,
}

impl Report {
    /// An empty report.
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one check.
    pub fn push(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), ok, detail: detail.into() });
    }

    /// Records whether `lhs` and `rhs` agree through at least `q^through`.
    pub fn push_series_eq(&mut self, name: impl Into<String>, lhs: &QSeries, rhs: &QSeries, through: i64) {
        let (ok, detail) = match lhs.eq_to(rhs) {
            Ok(n) if n >= through => (true, format!("equal through q^{through}")),
            Ok(n) => (false, format!("only comparable through q^{n}, wanted q^{through}")),
            Err(n) => (false, format!("first difference at q^{n}: {} vs {}", lhs.coeff(n), rhs.coeff(n))),
        };
        self.push(name, ok, detail);
    }

    /// Appends all checks of `other`.
    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// True if every check passed.
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// The first failing check, if any.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {}: {}", if c.ok { "ok" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}
