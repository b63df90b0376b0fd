use std::collections::HashMap;

use rand::Rng;

use super::eval::FmaxCache;
use super::StrategyTree;
use crate::constraints::{ConstraintState, ProbeConstraint, EXHAUSTIVE_LIMIT, STATE_LIMIT};
use crate::error::{check_limit, ProbeError, Result};
use crate::functions::TIE_EPS;
use crate::ground::{GroundSet, Subset};
use crate::instances::Instance;
use crate::rng;

type Key = (ConstraintState, Subset);

struct Solver<'a> {
    ground: &'a GroundSet,
    constraint: &'a dyn ProbeConstraint,
    fmax: FmaxCache<'a>,
    memo: HashMap<Key, (f64, Option<usize>)>,
    state_limit: usize,
}

impl Solver<'_> {
    fn value(&mut self, st: ConstraintState, active: Subset) -> Result<f64> {
        if let Some(&(v, _)) = self.memo.get(&(st, active)) {
            return Ok(v);
        }
        if self.memo.len() >= self.state_limit {
            return Err(ProbeError::StateBudget {
                what: "optimal adaptive DP",
                limit: self.state_limit,
            });
        }
        // Stopping is always allowed; a probe must beat it strictly.
        let mut best = (self.fmax.get(active)?, None);
        for e in self.constraint.feasible_next(&st) {
            let next = self
                .constraint
                .transition(&st, e)
                .expect("feasible_next only yields accepted elements");
            let p = self.ground.p(e);
            let y = self.value(next, active.with(e))?;
            let n = self.value(next, active)?;
            let v = p * y + (1.0 - p) * n;
            if v > best.0 + TIE_EPS {
                best = (v, Some(e));
            }
        }
        self.memo.insert((st, active), best);
        Ok(best.0)
    }

    fn build(&self, st: ConstraintState, active: Subset) -> StrategyTree {
        match self.memo[&(st, active)].1 {
            None => StrategyTree::Leaf,
            Some(e) => {
                let next = self.constraint.transition(&st, e).expect("recorded probe is feasible");
                StrategyTree::node(e, self.build(next, active.with(e)), self.build(next, active))
            }
        }
    }
}

/// Exact optimal adaptive strategy by memoized DP over
/// `(constraint state, active set)`.
///
/// At every state the strategy may stop and collect `f^max(active)`, or probe
/// any feasible element. A probe replaces the incumbent only when better by
/// more than `1e-12`, so ties go to stopping, then to the lowest index.
pub fn opt_adaptive(inst: &Instance) -> Result<(f64, StrategyTree)> {
    opt_adaptive_with_limit(inst, STATE_LIMIT)
}

/// [`opt_adaptive`] with an explicit cap on memoized states.
pub fn opt_adaptive_with_limit(inst: &Instance, state_limit: usize) -> Result<(f64, StrategyTree)> {
    check_limit("optimal adaptive DP", inst.n(), EXHAUSTIVE_LIMIT)?;
    let mut solver = Solver {
        ground: inst.ground(),
        constraint: inst.constraint(),
        fmax: FmaxCache::new(inst.objective())?,
        memo: HashMap::new(),
        state_limit,
    };
    let root = inst.constraint().initial();
    let value = solver.value(root, Subset::EMPTY)?;
    Ok((value, solver.build(root, Subset::EMPTY)))
}

/// Random valid tree with at most `max_nodes` probing nodes.
///
/// Each node is expanded with probability 0.85 while budget and feasible
/// elements remain; the probed element is uniform over the feasible ones.
pub fn random_tree(inst: &Instance, seed: u64, max_nodes: usize) -> StrategyTree {
    let mut rng = rng::seeded(seed);
    let mut budget = max_nodes;
    grow(inst.constraint(), inst.constraint().initial(), &mut budget, &mut rng)
}

fn grow<R: Rng>(c: &dyn ProbeConstraint, st: ConstraintState, budget: &mut usize, rng: &mut R) -> StrategyTree {
    if *budget == 0 {
        return StrategyTree::Leaf;
    }
    let options = c.feasible_next(&st).to_vec();
    if options.is_empty() || !rng.gen_bool(0.85) {
        return StrategyTree::Leaf;
    }
    *budget -= 1;
    let e = options[rng.gen_range(0..options.len())];
    let next = c.transition(&st, e).expect("feasible element");
    let yes = grow(c, next, budget, rng);
    let no = grow(c, next, budget, rng);
    StrategyTree::node(e, yes, no)
}
