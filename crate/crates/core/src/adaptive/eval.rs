use std::collections::HashMap;

use super::StrategyTree;
use crate::error::{check_limit, Result};
use crate::functions::{check_ground, fmax, FmaxTable, SetFunction};
use crate::ground::{expect_over, GroundSet, Subset, MAX_OUTCOME_SET};

/// Ground sets up to this size get a full `f^max` table up front.
const EAGER_TABLE_LIMIT: usize = 16;

/// Memoized `f^max` lookups: a full table for small ground sets, lazy
/// per-set caching otherwise.
pub(crate) struct FmaxCache<'a> {
    f: &'a dyn SetFunction,
    table: Option<FmaxTable>,
    memo: HashMap<Subset, f64>,
}

impl<'a> FmaxCache<'a> {
    pub(crate) fn new(f: &'a dyn SetFunction) -> Result<Self> {
        let table = if f.ground_size() <= EAGER_TABLE_LIMIT {
            Some(FmaxTable::new(f)?)
        } else {
            None
        };
        Ok(FmaxCache {
            f,
            table,
            memo: HashMap::new(),
        })
    }

    pub(crate) fn get(&mut self, s: Subset) -> Result<f64> {
        if let Some(t) = &self.table {
            return Ok(t.fmax(s));
        }
        if let Some(&v) = self.memo.get(&s) {
            return Ok(v);
        }
        let v = fmax(self.f, s)?;
        self.memo.insert(s, v);
        Ok(v)
    }

    /// `E_{R ~ s(p)}[f^max(R)]`.
    pub(crate) fn expected(&mut self, s: Subset, g: &GroundSet) -> Result<f64> {
        check_limit("expected fmax", s.len(), MAX_OUTCOME_SET)?;
        if let Some(t) = &self.table {
            return Ok(expect_over(s, g.probs(), |r| t.fmax(r)));
        }
        let mut err = None;
        let v = expect_over(s, g.probs(), |r| match self.get(r) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                0.0
            }
        });
        err.map_or(Ok(v), Err)
    }
}

/// `adap(T, f) = E_ℓ[f^max(A_ℓ)]`: the value of running `T` and keeping the
/// best subset of the active elements it saw.
pub fn adap_value(tree: &StrategyTree, f: &dyn SetFunction, g: &GroundSet) -> Result<f64> {
    check_ground(f, g)?;
    tree.check_structure(g.len())?;
    let mut cache = FmaxCache::new(f)?;
    adap_with(tree, g, &mut cache, Subset::EMPTY)
}

pub(crate) fn adap_with(tree: &StrategyTree, g: &GroundSet, cache: &mut FmaxCache<'_>, active: Subset) -> Result<f64> {
    match tree {
        StrategyTree::Leaf => cache.get(active),
        StrategyTree::Node { elt, yes, no } => {
            let p = g.p(*elt);
            let y = adap_with(yes, g, cache, active.with(*elt))?;
            let n = adap_with(no, g, cache, active)?;
            Ok(p * y + (1.0 - p) * n)
        }
    }
}

/// Value of the online variant: each active element met on the path is kept
/// independently with probability `keep_prob`, and the result is `f(kept)`.
pub fn adap_online_value(tree: &StrategyTree, f: &dyn SetFunction, g: &GroundSet, keep_prob: f64) -> Result<f64> {
    check_ground(f, g)?;
    tree.check_structure(g.len())?;
    if !(0.0..=1.0).contains(&keep_prob) {
        return Err(crate::error::ProbeError::Precondition(format!(
            "keep probability {keep_prob} outside [0, 1]"
        )));
    }
    fn go(t: &StrategyTree, f: &dyn SetFunction, g: &GroundSet, keep: f64, kept: Subset) -> f64 {
        match t {
            StrategyTree::Leaf => f.eval(kept),
            StrategyTree::Node { elt, yes, no } => {
                let p = g.p(*elt);
                let mut y = 0.0;
                if p > 0.0 {
                    if keep > 0.0 {
                        y += keep * go(yes, f, g, keep, kept.with(*elt));
                    }
                    if keep < 1.0 {
                        y += (1.0 - keep) * go(yes, f, g, keep, kept);
                    }
                }
                let n = if p < 1.0 { go(no, f, g, keep, kept) } else { 0.0 };
                p * y + (1.0 - p) * n
            }
        }
    }
    Ok(go(tree, f, g, keep_prob, Subset::EMPTY))
}

/// `alg(T, f)`: draw a leaf from `T`'s own outcome distribution, then probe
/// that leaf's path afresh and take `f^max` of what comes up active.
pub fn alg_value(tree: &StrategyTree, f: &dyn SetFunction, g: &GroundSet) -> Result<f64> {
    check_ground(f, g)?;
    tree.check_structure(g.len())?;
    let mut cache = FmaxCache::new(f)?;
    let mut by_path: HashMap<Subset, f64> = HashMap::new();
    for leaf in tree.leaves(g) {
        *by_path.entry(leaf.probed).or_insert(0.0) += leaf.prob;
    }
    let mut paths: Vec<_> = by_path.into_iter().collect();
    paths.sort_by_key(|(s, _)| *s);
    let mut total = 0.0;
    for (path, weight) in paths {
        if weight > 0.0 {
            total += weight * cache.expected(path, g)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{CoverageFunction, Objective, TableFunction, FunctionClass, XosFunction};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    fn at_most_one(n: usize) -> Objective {
        Objective::Table(TableFunction::from_fn(n, FunctionClass::MonotoneSubmodular, |s| s.len().min(1) as f64).unwrap())
    }

    /// Probe e1; if inactive probe e2.
    fn stem_two() -> StrategyTree {
        StrategyTree::node(0, StrategyTree::Leaf, StrategyTree::node(1, StrategyTree::Leaf, StrategyTree::Leaf))
    }

    /// Brute force over joint activation outcomes of the whole ground set.
    fn adap_oracle(t: &StrategyTree, f: &dyn SetFunction, g: &GroundSet) -> f64 {
        let mut total = 0.0;
        crate::ground::for_each_outcome(g.full(), g.probs(), |world, pr| {
            let mut cur = t;
            let mut active = Subset::EMPTY;
            while let StrategyTree::Node { elt, yes, no } = cur {
                if world.contains(*elt) {
                    active = active.with(*elt);
                    cur = yes;
                } else {
                    cur = no;
                }
            }
            total += pr * fmax(f, active).unwrap();
        });
        total
    }

    #[test]
    fn single_leaf_is_zero() {
        let g = GroundSet::uniform(2, 0.5).unwrap();
        let f = at_most_one(2);
        assert_eq!(adap_value(&StrategyTree::Leaf, &f, &g).unwrap(), 0.0);
        assert_eq!(alg_value(&StrategyTree::Leaf, &f, &g).unwrap(), 0.0);
    }

    #[test]
    fn single_probe() {
        let g = GroundSet::uniform(1, 0.5).unwrap();
        let f = at_most_one(1);
        assert!(close(adap_value(&StrategyTree::chain(&[0]), &f, &g).unwrap(), 0.5));
    }

    #[test]
    fn stem_of_two() {
        let g = GroundSet::uniform(2, 0.5).unwrap();
        let f = at_most_one(2);
        assert!(close(adap_value(&stem_two(), &f, &g).unwrap(), 0.75));
        let alg = alg_value(&stem_two(), &f, &g).unwrap();
        assert!(close(alg, 0.625));
        assert!(alg >= 0.75 / 3.0);
    }

    #[test]
    fn deterministic_activation_makes_alg_equal_adap() {
        let g = GroundSet::uniform(3, 1.0).unwrap();
        let f = Objective::Xos(XosFunction::new(3, vec![vec![1.0, 2.0, 0.0], vec![0.0, 1.0, 3.0]]).unwrap());
        let t = StrategyTree::node(0, StrategyTree::chain(&[2]), StrategyTree::chain(&[1]));
        assert!(close(adap_value(&t, &f, &g).unwrap(), alg_value(&t, &f, &g).unwrap()));
    }

    #[test]
    fn online_variants() {
        let g = GroundSet::new(vec![0.4, 0.7]).unwrap();
        let f = Objective::Coverage(CoverageFunction::new(vec![1.0, 2.0], vec![vec![0], vec![0, 1]]).unwrap());
        let t = stem_two();
        let full = adap_online_value(&t, &f, &g, 1.0).unwrap();
        assert!(close(full, adap_value(&t, &f, &g).unwrap()));
        assert_eq!(adap_online_value(&t, &f, &g, 0.0).unwrap(), 0.0);

        let one = GroundSet::uniform(1, 1.0).unwrap();
        assert!(close(adap_online_value(&StrategyTree::chain(&[0]), &at_most_one(1), &one, 0.5).unwrap(), 0.5));
    }

    #[test]
    fn adap_matches_world_enumeration() {
        let g = GroundSet::new(vec![0.2, 0.5, 0.9, 0.35]).unwrap();
        let f = Objective::Coverage(
            CoverageFunction::new(vec![1.0, 0.5, 2.0], vec![vec![0], vec![0, 1], vec![2], vec![1, 2]]).unwrap(),
        );
        let t = StrategyTree::node(
            2,
            StrategyTree::node(0, StrategyTree::chain(&[3]), StrategyTree::Leaf),
            StrategyTree::node(1, StrategyTree::Leaf, StrategyTree::chain(&[3, 0])),
        );
        assert!((adap_value(&t, &f, &g).unwrap() - adap_oracle(&t, &f, &g)).abs() < 1e-12);
    }
}
