use serde::{Deserialize, Serialize};

use super::{
    binomial, check_weights, k_subsets, top_positive, weight_of, ConstraintState, OracleAnswer,
    ProbeConstraint, MAXIMAL_SET_LIMIT,
};
use crate::error::{ProbeError, Result};
use crate::ground::Subset;

/// At most `budget` probes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CardinalityConstraint {
    n: usize,
    budget: usize,
}

impl CardinalityConstraint {
    pub fn new(n: usize, budget: usize) -> Self {
        CardinalityConstraint { n, budget }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }
}

impl ProbeConstraint for CardinalityConstraint {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_order_independent(&self) -> bool {
        true
    }

    fn advance(&self, state: &ConstraintState, e: usize) -> Option<ConstraintState> {
        (state.probed.len() < self.budget).then(|| state.after(e))
    }

    fn linear_oracle(&self, weights: &[f64]) -> Result<OracleAnswer> {
        check_weights(self.n, weights)?;
        let pool: Vec<usize> = (0..self.n).collect();
        let set: Subset = top_positive(&pool, weights, self.budget).into_iter().collect();
        Ok(OracleAnswer {
            set,
            value: weight_of(set, weights),
        })
    }

    fn maximal_feasible(&self) -> Result<Vec<Subset>> {
        let k = self.budget.min(self.n);
        let count = binomial(self.n, k);
        if count > MAXIMAL_SET_LIMIT {
            return Err(ProbeError::EnumerationLimit {
                what: "maximal cardinality sets",
                size: count,
                limit: MAXIMAL_SET_LIMIT,
            });
        }
        let pool: Vec<usize> = (0..self.n).collect();
        Ok(k_subsets(&pool, k))
    }
}
