use serde::{Deserialize, Serialize};

use super::{ConstraintState, ProbeConstraint};
use crate::error::{ProbeError, Result};
use crate::ground::MAX_GROUND;

const SLACK: f64 = 1e-12;

/// Orienteering-style budget: walking from the start vertex through the
/// probed elements in order must cost at most `budget`.
///
/// `distances` is an `(n + 1) x (n + 1)` matrix; vertex `n` is the start.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetPathConstraint {
    distances: Vec<Vec<f64>>,
    budget: f64,
}

impl BudgetPathConstraint {
    pub fn new(distances: Vec<Vec<f64>>, budget: f64) -> Result<Self> {
        let c = BudgetPathConstraint { distances, budget };
        c.validate()?;
        Ok(c)
    }

    /// Euclidean distances between `points`, starting from `start`.
    pub fn from_points(start: (f64, f64), points: &[(f64, f64)], budget: f64) -> Result<Self> {
        let all: Vec<(f64, f64)> = points.iter().copied().chain(std::iter::once(start)).collect();
        let distances = all
            .iter()
            .map(|a| all.iter().map(|b| (a.0 - b.0).hypot(a.1 - b.1)).collect())
            .collect();
        BudgetPathConstraint::new(distances, budget)
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    /// Length of the walk start -> seq[0] -> seq[1] -> ...
    pub fn walk_length(&self, seq: &[usize]) -> f64 {
        let mut at = self.ground_size();
        let mut total = 0.0;
        for &e in seq {
            total += self.distances[at][e];
            at = e;
        }
        total
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let size = self.distances.len();
        if size == 0 || size - 1 > MAX_GROUND {
            return Err(ProbeError::InvalidInstance(format!(
                "budget path needs between 1 and {} vertices, got {size}",
                MAX_GROUND + 1
            )));
        }
        for row in &self.distances {
            if row.len() != size {
                return Err(ProbeError::InvalidInstance("distance matrix is not square".into()));
            }
            if row.iter().any(|d| !(*d >= 0.0 && d.is_finite())) {
                return Err(ProbeError::InvalidInstance("distances must be finite and non-negative".into()));
            }
        }
        if !(self.budget >= 0.0) {
            return Err(ProbeError::InvalidInstance(format!("budget {} is negative", self.budget)));
        }
        Ok(())
    }
}

impl ProbeConstraint for BudgetPathConstraint {
    fn ground_size(&self) -> usize {
        self.distances.len() - 1
    }

    fn is_order_independent(&self) -> bool {
        false
    }

    fn initial(&self) -> ConstraintState {
        ConstraintState::with_cursor(Default::default(), self.ground_size() as u32, 0.0)
    }

    fn advance(&self, state: &ConstraintState, e: usize) -> Option<ConstraintState> {
        let spent = state.spent() + self.distances[state.cursor() as usize][e];
        (spent <= self.budget + SLACK).then(|| ConstraintState::with_cursor(state.probed().with(e), e as u32, spent))
    }
}
