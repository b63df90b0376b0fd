use serde::{Deserialize, Serialize};

use crate::constraints::ProbeConstraint;
use crate::error::{ProbeError, Result};
use crate::ground::{GroundSet, Subset};

/// Binary adaptive decision tree.
///
/// Each internal node probes one element and branches on whether it turned
/// out active (`yes`) or not (`no`). Leaves carry nothing.
///
/// JSON form: a node is `{"elt": e, "yes": .., "no": ..}`, a leaf is `"leaf"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "TreeRepr", into = "TreeRepr")]
pub enum StrategyTree {
    Leaf,
    Node {
        elt: usize,
        yes: Box<StrategyTree>,
        no: Box<StrategyTree>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum LeafTag {
    Leaf,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TreeRepr {
    Leaf(LeafTag),
    Node {
        elt: usize,
        yes: Box<StrategyTree>,
        no: Box<StrategyTree>,
    },
}

impl From<TreeRepr> for StrategyTree {
    fn from(r: TreeRepr) -> Self {
        match r {
            TreeRepr::Leaf(_) => StrategyTree::Leaf,
            TreeRepr::Node { elt, yes, no } => StrategyTree::Node { elt, yes, no },
        }
    }
}

impl From<StrategyTree> for TreeRepr {
    fn from(t: StrategyTree) -> Self {
        match t {
            StrategyTree::Leaf => TreeRepr::Leaf(LeafTag::Leaf),
            StrategyTree::Node { elt, yes, no } => TreeRepr::Node { elt, yes, no },
        }
    }
}

/// A root-leaf path: the probed elements, the active ones among them, and
/// the probability of reaching the leaf.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeafPath {
    pub probed: Subset,
    pub active: Subset,
    pub prob: f64,
}

/// The all-no path from the root, with the subtrees hanging off its yes-arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct StemView<'a> {
    pub elements: Vec<usize>,
    pub branches: Vec<&'a StrategyTree>,
}

impl StemView<'_> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl StrategyTree {
    pub fn node(elt: usize, yes: StrategyTree, no: StrategyTree) -> Self {
        StrategyTree::Node {
            elt,
            yes: Box::new(yes),
            no: Box::new(no),
        }
    }

    /// Probes `seq` in order regardless of outcomes.
    pub fn chain(seq: &[usize]) -> Self {
        seq.iter().rev().fold(StrategyTree::Leaf, |rest, &e| {
            StrategyTree::node(e, rest.clone(), rest)
        })
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, StrategyTree::Leaf)
    }

    /// Number of internal (probing) nodes.
    pub fn node_count(&self) -> usize {
        match self {
            StrategyTree::Leaf => 0,
            StrategyTree::Node { yes, no, .. } => 1 + yes.node_count() + no.node_count(),
        }
    }

    /// Longest root-leaf probe count.
    pub fn height(&self) -> usize {
        match self {
            StrategyTree::Leaf => 0,
            StrategyTree::Node { yes, no, .. } => 1 + yes.height().max(no.height()),
        }
    }

    /// Maximum number of yes-arcs on a root-leaf path.
    pub fn deepness(&self) -> usize {
        match self {
            StrategyTree::Leaf => 0,
            StrategyTree::Node { yes, no, .. } => (1 + yes.deepness()).max(no.deepness()),
        }
    }

    pub fn stem(&self) -> StemView<'_> {
        let mut view = StemView {
            elements: Vec::new(),
            branches: Vec::new(),
        };
        let mut cur = self;
        while let StrategyTree::Node { elt, yes, no } = cur {
            view.elements.push(*elt);
            view.branches.push(yes);
            cur = no;
        }
        view
    }

    /// Every subtree, root first, in pre-order.
    pub fn subtrees(&self) -> Vec<&StrategyTree> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            if let StrategyTree::Node { yes, no, .. } = t {
                stack.push(no);
                stack.push(yes);
            }
        }
        out
    }

    /// Structural check: indices below `n`, no element twice on a path.
    pub fn check_structure(&self, n: usize) -> Result<()> {
        fn go(t: &StrategyTree, n: usize, seen: Subset) -> Result<()> {
            match t {
                StrategyTree::Leaf => Ok(()),
                StrategyTree::Node { elt, yes, no } => {
                    if *elt >= n {
                        return Err(ProbeError::InvalidTree(format!(
                            "element {elt} out of range for ground set of size {n}"
                        )));
                    }
                    if seen.contains(*elt) {
                        return Err(ProbeError::InvalidTree(format!(
                            "element {elt} appears twice on one root-leaf path"
                        )));
                    }
                    go(yes, n, seen.with(*elt))?;
                    go(no, n, seen.with(*elt))
                }
            }
        }
        go(self, n, Subset::EMPTY)
    }

    /// Structural check plus feasibility of every root-leaf probe sequence.
    pub fn validate(&self, c: &dyn ProbeConstraint) -> Result<()> {
        self.check_structure(c.ground_size())?;
        fn go(t: &StrategyTree, c: &dyn ProbeConstraint, st: crate::constraints::ConstraintState, path: &mut Vec<usize>) -> Result<()> {
            if let StrategyTree::Node { elt, yes, no } = t {
                path.push(*elt);
                let next = c.transition(&st, *elt).ok_or_else(|| {
                    ProbeError::InvalidTree(format!("probe sequence {path:?} is infeasible"))
                })?;
                go(yes, c, next, path)?;
                go(no, c, next, path)?;
                path.pop();
            }
            Ok(())
        }
        go(self, c, c.initial(), &mut Vec::new())
    }

    /// Every root-leaf path with its probability under `g`.
    pub fn leaves(&self, g: &GroundSet) -> Vec<LeafPath> {
        fn go(t: &StrategyTree, g: &GroundSet, at: LeafPath, out: &mut Vec<LeafPath>) {
            match t {
                StrategyTree::Leaf => out.push(at),
                StrategyTree::Node { elt, yes, no } => {
                    let probed = at.probed.with(*elt);
                    go(
                        yes,
                        g,
                        LeafPath {
                            probed,
                            active: at.active.with(*elt),
                            prob: at.prob * g.p(*elt),
                        },
                        out,
                    );
                    go(
                        no,
                        g,
                        LeafPath {
                            probed,
                            active: at.active,
                            prob: at.prob * g.q(*elt),
                        },
                        out,
                    );
                }
            }
        }
        let mut out = Vec::new();
        go(
            self,
            g,
            LeafPath {
                probed: Subset::EMPTY,
                active: Subset::EMPTY,
                prob: 1.0,
            },
            &mut out,
        );
        out
    }
}
