use serde::{Deserialize, Serialize};

use super::{
    check_weights, k_subsets, top_positive, weight_of, ConstraintState, OracleAnswer, ProbeConstraint,
    MAXIMAL_SET_LIMIT,
};
use crate::error::{ProbeError, Result};
use crate::ground::{Subset, MAX_GROUND};

/// Per-part probe capacities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionMatroidConstraint {
    /// Part label of each element.
    parts: Vec<usize>,
    capacities: Vec<usize>,
}

impl PartitionMatroidConstraint {
    pub fn new(parts: Vec<usize>, capacities: Vec<usize>) -> Result<Self> {
        let c = PartitionMatroidConstraint { parts, capacities };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.parts.len() > MAX_GROUND {
            return Err(ProbeError::InvalidInstance(format!(
                "partition matroid on {} elements",
                self.parts.len()
            )));
        }
        if let Some(p) = self.parts.iter().find(|&&p| p >= self.capacities.len()) {
            return Err(ProbeError::InvalidInstance(format!("part label {p} has no capacity")));
        }
        Ok(())
    }

    fn members(&self, part: usize) -> Vec<usize> {
        (0..self.parts.len()).filter(|&e| self.parts[e] == part).collect()
    }
}

impl ProbeConstraint for PartitionMatroidConstraint {
    fn ground_size(&self) -> usize {
        self.parts.len()
    }

    fn is_order_independent(&self) -> bool {
        true
    }

    fn advance(&self, state: &ConstraintState, e: usize) -> Option<ConstraintState> {
        let part = self.parts[e];
        let used = state.probed.iter().filter(|&x| self.parts[x] == part).count();
        (used < self.capacities[part]).then(|| state.after(e))
    }

    fn linear_oracle(&self, weights: &[f64]) -> Result<OracleAnswer> {
        check_weights(self.parts.len(), weights)?;
        let set: Subset = (0..self.capacities.len())
            .flat_map(|p| top_positive(&self.members(p), weights, self.capacities[p]))
            .collect();
        Ok(OracleAnswer {
            set,
            value: weight_of(set, weights),
        })
    }

    fn maximal_feasible(&self) -> Result<Vec<Subset>> {
        let mut sets = vec![Subset::EMPTY];
        for p in 0..self.capacities.len() {
            let members = self.members(p);
            let choices = k_subsets(&members, self.capacities[p].min(members.len()));
            if sets.len().saturating_mul(choices.len()) > MAXIMAL_SET_LIMIT {
                return Err(ProbeError::EnumerationLimit {
                    what: "maximal partition-matroid sets",
                    size: sets.len().saturating_mul(choices.len()),
                    limit: MAXIMAL_SET_LIMIT,
                });
            }
            sets = sets
                .iter()
                .flat_map(|s| choices.iter().map(move |c| s.union(*c)))
                .collect();
        }
        sets.sort_by(|a, b| a.lex_cmp(*b));
        Ok(sets)
    }
}
