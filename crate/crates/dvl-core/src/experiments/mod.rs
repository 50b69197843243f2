//! Parameterized numerical experiments, each producing an [`ExperimentReport`].

mod diagonal;
mod hankel;
mod homogeneous;
mod misc;
mod primesums;
mod primitive;

pub use diagonal::exp_diagonal;
pub use hankel::{exp_hankel_vs_volterra, hdelta_integral, power_law_symbol, HankelVsVolterraParams};
pub use homogeneous::{exp_homo_sharpness, omega_square_sum};
pub use misc::{exp_column_norms, exp_int0ld, exp_two_prime, int0ld};
pub use primesums::{exp_hj, exp_psi_symbol, exp_triple_sum, psi, triple_sum_direct, triple_sum_laplace, HjParams, PsiParams, TripleSumParams};
pub use primitive::{exp_primitive_zw, restricted_tilde_norm, PrimitiveParams};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::Int(i) => Some(i as f64),
            Value::Real(x) => Some(x),
            _ => None,
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x as i64)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

/// Outcome of one trend or identity check made by an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentReport {
    pub name: String,
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub metadata: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl ExperimentReport {
    pub(crate) fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub(crate) fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.push((key.into(), value.to_string()));
    }

    pub(crate) fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    pub(crate) fn push(&mut self, row: Vec<Value>) -> Result<()> {
        debug_assert_eq!(row.len(), self.columns.len());
        if row.iter().any(|v| matches!(v, Value::Real(x) if !x.is_finite())) {
            return Err(Error::numeric(format!("{}: non-finite value in row {}", self.name, self.rows.len() + 1)));
        }
        self.rows.push(row);
        Ok(())
    }

    pub(crate) fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub(crate) fn finish(self) -> Result<Self> {
        if self.rows.is_empty() {
            return Err(Error::numeric(format!("{}: no rows produced", self.name)));
        }
        Ok(self)
    }

    /// Numeric column by name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        self.rows.iter().map(|r| r[i].as_f64()).collect()
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `max/min` of a positive sequence, or `None` if some entry is not positive.
pub fn band_width(values: &[f64]) -> Option<f64> {
    if values.is_empty() || values.iter().any(|&v| !(v > 0.0)) {
        return None;
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(0.0, f64::max);
    Some(hi / lo)
}

pub(crate) fn strictly_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] > w[0])
}
