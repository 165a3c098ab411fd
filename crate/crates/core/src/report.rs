//! Structured pass/fail reports.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::helix::HelixRoot;

/// Direction of a tolerance: most checks bound a residual from above, a few
/// (non-vanishing residuals, convergence ratios) from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
}

impl Check {
    /// Passes when `value <= tolerance`; NaN never passes.
    pub fn at_most(name: &str, value: f64, tolerance: f64) -> Self {
        Check { name: name.to_string(), pass: value <= tolerance, max_residual: value, tolerance, bound: Bound::AtMost }
    }

    /// Passes when `value >= tolerance`; NaN never passes.
    pub fn at_least(name: &str, value: f64, tolerance: f64) -> Self {
        Check { name: name.to_string(), pass: value >= tolerance, max_residual: value, tolerance, bound: Bound::AtLeast }
    }

    /// A check that could not be evaluated.
    pub fn failed(name: &str) -> Self {
        Check { name: name.to_string(), pass: false, max_residual: f64::NAN, tolerance: 0.0, bound: Bound::AtMost }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Report {
    pub checks: Vec<Check>,
    pub roots: Vec<HelixRoot>,
    /// Named measurements that are reported but not judged.
    pub metrics: Vec<(String, f64)>,
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn metric(&mut self, name: &str, value: f64) {
        self.metrics.push((name.to_string(), value));
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.roots.extend(other.roots);
        self.metrics.extend(other.metrics);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
