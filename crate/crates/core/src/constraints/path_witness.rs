use serde::{Deserialize, Serialize};

use super::{better, check_weights, weight_of, ConstraintState, OracleAnswer, ProbeConstraint};
use crate::error::{ProbeError, Result};
use crate::ground::{Subset, MAX_GROUND};

/// A complete `arity`-ary rooted tree of height `depth` whose edges are
/// the ground set.
///
/// Edges are numbered level by level: the `arity` root edges first, then
/// their children, and so on. The edge at position `j` of level `L` hangs
/// below the edge at position `j / arity` of level `L - 1`. Each edge is
/// identified with its lower endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KaryTree {
    pub arity: usize,
    pub depth: usize,
}

impl KaryTree {
    pub fn new(arity: usize, depth: usize) -> Result<Self> {
        if arity == 0 || depth == 0 {
            return Err(ProbeError::InvalidInstance("k-ary tree needs arity and depth >= 1".into()));
        }
        let t = KaryTree { arity, depth };
        if t.edge_count() > MAX_GROUND {
            return Err(ProbeError::InvalidInstance(format!(
                "k-ary tree with {} edges exceeds {MAX_GROUND}",
                t.edge_count()
            )));
        }
        Ok(t)
    }

    fn level_width(&self, level: usize) -> usize {
        self.arity.pow(level as u32)
    }

    /// Index of the first edge on `level` (1-based levels).
    fn level_offset(&self, level: usize) -> usize {
        (1..level).map(|l| self.level_width(l)).sum()
    }

    pub fn edge_count(&self) -> usize {
        (1..=self.depth).map(|l| self.level_width(l)).sum()
    }

    pub fn leaf_count(&self) -> usize {
        self.level_width(self.depth)
    }

    /// Edges of the root-to-leaf path ending at leaf `leaf`.
    pub fn leaf_path(&self, leaf: usize) -> Subset {
        (1..=self.depth)
            .map(|l| self.level_offset(l) + leaf / self.level_width(self.depth - l))
            .collect()
    }

    /// Edges with at least one endpoint on the path to `leaf`.
    pub fn covered_by(&self, leaf: usize) -> Subset {
        let mut cover = Subset::full(self.arity);
        for l in 1..self.depth {
            let pos = leaf / self.level_width(self.depth - l);
            let child_start = self.level_offset(l + 1) + pos * self.arity;
            cover = cover.union((child_start..child_start + self.arity).collect());
        }
        cover.union(self.leaf_path(leaf))
    }
}

/// Feasible iff some root-leaf path touches every probed edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PathWitnessRepr", into = "PathWitnessRepr")]
pub struct PathWitnessConstraint {
    tree: KaryTree,
    witnesses: Vec<Subset>,
}

#[derive(Serialize, Deserialize)]
struct PathWitnessRepr {
    arity: usize,
    depth: usize,
}

impl TryFrom<PathWitnessRepr> for PathWitnessConstraint {
    type Error = ProbeError;
    fn try_from(r: PathWitnessRepr) -> Result<Self> {
        PathWitnessConstraint::new(r.arity, r.depth)
    }
}

impl From<PathWitnessConstraint> for PathWitnessRepr {
    fn from(c: PathWitnessConstraint) -> Self {
        PathWitnessRepr {
            arity: c.tree.arity,
            depth: c.tree.depth,
        }
    }
}

impl PathWitnessConstraint {
    pub fn new(arity: usize, depth: usize) -> Result<Self> {
        let tree = KaryTree::new(arity, depth)?;
        let mut witnesses: Vec<Subset> = Vec::new();
        for leaf in 0..tree.leaf_count() {
            let cover = tree.covered_by(leaf);
            if !witnesses.contains(&cover) {
                witnesses.push(cover);
            }
        }
        Ok(PathWitnessConstraint { tree, witnesses })
    }

    pub fn tree(&self) -> KaryTree {
        self.tree
    }

    /// Distinct edge sets covered by some root-leaf path, in leaf order.
    pub fn witness_sets(&self) -> &[Subset] {
        &self.witnesses
    }

    pub fn is_feasible(&self, set: Subset) -> bool {
        self.witnesses.iter().any(|w| set.is_subset_of(*w))
    }

    pub(crate) fn validate(&self) -> Result<()> {
        KaryTree::new(self.tree.arity, self.tree.depth).map(|_| ())
    }
}

impl ProbeConstraint for PathWitnessConstraint {
    fn ground_size(&self) -> usize {
        self.tree.edge_count()
    }

    fn is_order_independent(&self) -> bool {
        true
    }

    fn advance(&self, state: &ConstraintState, e: usize) -> Option<ConstraintState> {
        self.is_feasible(state.probed.with(e)).then(|| state.after(e))
    }

    fn linear_oracle(&self, weights: &[f64]) -> Result<OracleAnswer> {
        check_weights(self.ground_size(), weights)?;
        let mut best = OracleAnswer {
            set: Subset::EMPTY,
            value: 0.0,
        };
        for w in &self.witnesses {
            let set: Subset = w.iter().filter(|&e| weights[e] > 0.0).collect();
            let v = weight_of(set, weights);
            if better(v, set, &best) {
                best = OracleAnswer { set, value: v };
            }
        }
        Ok(best)
    }

    fn maximal_feasible(&self) -> Result<Vec<Subset>> {
        Ok(self.witnesses.clone())
    }
}
