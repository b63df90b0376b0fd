use serde::{Deserialize, Serialize};

use super::{FunctionClass, SetFunction};
use crate::error::{ProbeError, Result};
use crate::ground::{Subset, MAX_GROUND};

/// Monotone XOS function `f(S) = max_i Σ_{e ∈ S} a_i(e)` with non-negative coefficients.
///
/// The number of rows is the width `W`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XosFunction {
    n: usize,
    coefficients: Vec<Vec<f64>>,
}

impl XosFunction {
    pub fn new(n: usize, coefficients: Vec<Vec<f64>>) -> Result<Self> {
        let f = XosFunction { n, coefficients };
        f.validate()?;
        Ok(f)
    }

    /// Width-1 function `f(S) = Σ_{e∈S} w(e)`.
    pub fn linear(weights: Vec<f64>) -> Result<Self> {
        XosFunction::new(weights.len(), vec![weights])
    }

    /// `f(S) = max_{e ∈ S} w(e)`: one linear function per element.
    pub fn unit_demand(weights: Vec<f64>) -> Result<Self> {
        let n = weights.len();
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![0.0; n];
                row[i] = weights[i];
                row
            })
            .collect();
        XosFunction::new(n, rows)
    }

    pub fn width(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Vec<f64>] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize, e: usize) -> f64 {
        self.coefficients[i][e]
    }

    /// `max_i a_i(e)`.
    pub fn peak(&self, e: usize) -> f64 {
        self.coefficients.iter().map(|row| row[e]).fold(0.0, f64::max)
    }

    /// `a_i(S)`.
    pub fn row_sum(&self, i: usize, s: Subset) -> f64 {
        s.iter().map(|e| self.coefficients[i][e]).sum()
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.n > MAX_GROUND {
            return Err(ProbeError::InvalidInstance(format!("xos function on {} elements", self.n)));
        }
        if self.coefficients.is_empty() {
            return Err(ProbeError::InvalidInstance("xos function needs width >= 1".into()));
        }
        for (i, row) in self.coefficients.iter().enumerate() {
            if row.len() != self.n {
                return Err(ProbeError::InvalidInstance(format!(
                    "xos row {i} has {} coefficients, expected {}",
                    row.len(),
                    self.n
                )));
            }
            if let Some(c) = row.iter().find(|c| !(**c >= 0.0 && c.is_finite())) {
                return Err(ProbeError::InvalidInstance(format!("xos coefficient {c} in row {i} is negative or not finite")));
            }
        }
        Ok(())
    }
}

impl SetFunction for XosFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, s: Subset) -> f64 {
        (0..self.width()).map(|i| self.row_sum(i, s)).fold(0.0, f64::max)
    }

    fn class(&self) -> FunctionClass {
        if self.width() == 1 {
            FunctionClass::MonotoneSubmodular
        } else {
            FunctionClass::Xos
        }
    }
}
