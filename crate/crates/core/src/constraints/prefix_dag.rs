use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ConstraintState, ProbeConstraint};
use crate::error::{ProbeError, Result};
use crate::ground::{Subset, MAX_GROUND};

/// Explicit trie of allowed probe sequences; every prefix of a listed
/// sequence is allowed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PrefixDagRepr", into = "PrefixDagRepr")]
pub struct PrefixDagConstraint {
    n: usize,
    sequences: Vec<Vec<usize>>,
    /// `children[node][element] = child node`; node 0 is the root.
    children: Vec<BTreeMap<usize, u32>>,
}

#[derive(Serialize, Deserialize)]
struct PrefixDagRepr {
    n: usize,
    sequences: Vec<Vec<usize>>,
}

impl TryFrom<PrefixDagRepr> for PrefixDagConstraint {
    type Error = ProbeError;
    fn try_from(r: PrefixDagRepr) -> Result<Self> {
        PrefixDagConstraint::new(r.n, r.sequences)
    }
}

impl From<PrefixDagConstraint> for PrefixDagRepr {
    fn from(c: PrefixDagConstraint) -> Self {
        PrefixDagRepr {
            n: c.n,
            sequences: c.sequences,
        }
    }
}

impl PrefixDagConstraint {
    pub fn new(n: usize, sequences: Vec<Vec<usize>>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(ProbeError::InvalidInstance(format!("prefix trie on {n} elements")));
        }
        let mut children = vec![BTreeMap::new()];
        for seq in &sequences {
            let mut seen = Subset::EMPTY;
            let mut node = 0usize;
            for &e in seq {
                if e >= n {
                    return Err(ProbeError::IndexOutOfRange { index: e, n });
                }
                if seen.contains(e) {
                    return Err(ProbeError::InvalidInstance(format!("sequence {seq:?} repeats element {e}")));
                }
                seen = seen.with(e);
                let next = children.len() as u32;
                let child = *children[node].entry(e).or_insert(next);
                if child == next {
                    children.push(BTreeMap::new());
                }
                node = child as usize;
            }
        }
        Ok(PrefixDagConstraint { n, sequences, children })
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub(crate) fn validate(&self) -> Result<()> {
        PrefixDagConstraint::new(self.n, self.sequences.clone()).map(|_| ())
    }
}

impl ProbeConstraint for PrefixDagConstraint {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn is_order_independent(&self) -> bool {
        false
    }

    fn advance(&self, state: &ConstraintState, e: usize) -> Option<ConstraintState> {
        let child = self.children[state.cursor() as usize].get(&e)?;
        Some(ConstraintState::with_cursor(state.probed().with(e), *child, 0.0))
    }
}
