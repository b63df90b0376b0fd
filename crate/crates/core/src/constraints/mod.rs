//! Prefix-closed probing constraints.
//!
//! Every constraint is a deterministic automaton over probe sequences. A
//! state is reachable only through accepted transitions, so every prefix of
//! an accepted sequence is accepted as well. Order-independent families
//! (cardinality, partition matroid, path witness) still go through the same
//! sequence interface; their state is a function of the probed set alone.

mod budget_path;
mod cardinality;
mod partition;
mod path_witness;
mod prefix_dag;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

pub use budget_path::BudgetPathConstraint;
pub use cardinality::CardinalityConstraint;
pub use partition::PartitionMatroidConstraint;
pub use path_witness::{KaryTree, PathWitnessConstraint};
pub use prefix_dag::PrefixDagConstraint;

use crate::error::{check_limit, ProbeError, Result};
use crate::functions::TIE_EPS;
use crate::ground::Subset;

/// Ground-set cap for exhaustive search over feasible sets.
pub const EXHAUSTIVE_LIMIT: usize = 14;
/// Cap on automaton states visited by exhaustive search.
pub const STATE_LIMIT: usize = 4_000_000;
/// Cap on sets emitted by structure-specific maximal-set enumeration.
pub const MAXIMAL_SET_LIMIT: usize = 1_000_000;

/// Automaton state: the probed set plus a constraint-specific cursor and
/// accumulated cost (stored as `f64` bits so the state stays hashable).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstraintState {
    probed: Subset,
    cursor: u32,
    spent: u64,
}

impl ConstraintState {
    pub fn probed(&self) -> Subset {
        self.probed
    }

    pub fn cursor(&self) -> u32 {
        self.cursor
    }

    pub fn spent(&self) -> f64 {
        f64::from_bits(self.spent)
    }

    pub(crate) fn with_cursor(probed: Subset, cursor: u32, spent: f64) -> Self {
        ConstraintState {
            probed,
            cursor,
            spent: spent.to_bits(),
        }
    }

    fn after(self, e: usize) -> Self {
        ConstraintState {
            probed: self.probed.with(e),
            ..self
        }
    }
}

/// Answer of the linear maximization oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleAnswer {
    pub set: Subset,
    pub value: f64,
}

/// A prefix-closed constraint on probe sequences.
pub trait ProbeConstraint: Send + Sync {
    fn ground_size(&self) -> usize;

    /// Whether acceptance depends only on the set of probed elements.
    fn is_order_independent(&self) -> bool;

    fn initial(&self) -> ConstraintState {
        ConstraintState::default()
    }

    /// Transition on a fresh element `e`; `None` rejects.
    ///
    /// Callers guarantee `e < n` and `e` not yet probed.
    fn advance(&self, state: &ConstraintState, e: usize) -> Option<ConstraintState>;

    /// Transition that also rejects repeated or out-of-range elements.
    fn transition(&self, state: &ConstraintState, e: usize) -> Option<ConstraintState> {
        if e >= self.ground_size() || state.probed.contains(e) {
            None
        } else {
            self.advance(state, e)
        }
    }

    /// Unprobed elements that may be probed next.
    fn feasible_next(&self, state: &ConstraintState) -> Subset {
        (0..self.ground_size())
            .filter(|&e| self.transition(state, e).is_some())
            .collect()
    }

    /// Runs the automaton over `seq`; `None` if any step rejects.
    fn run(&self, seq: &[usize]) -> Option<ConstraintState> {
        seq.iter()
            .try_fold(self.initial(), |st, &e| self.transition(&st, e))
    }

    fn accepts(&self, seq: &[usize]) -> bool {
        self.run(seq).is_some()
    }

    /// A feasible set maximizing total weight, ties broken toward the
    /// smallest cardinality and then the lexicographically smallest set.
    fn linear_oracle(&self, weights: &[f64]) -> Result<OracleAnswer> {
        check_weights(self.ground_size(), weights)?;
        exhaustive_oracle(self, weights)
    }

    /// Inclusion-maximal feasible probe sets.
    fn maximal_feasible(&self) -> Result<Vec<Subset>> {
        exhaustive_maximal(self)
    }

    /// Some accepted ordering of `set`, if there is one.
    fn sequence_for(&self, set: Subset) -> Result<Option<Vec<usize>>> {
        if self.is_order_independent() {
            let seq = set.to_vec();
            return Ok(self.accepts(&seq).then_some(seq));
        }
        search_sequence(self, set)
    }
}

/// Constraint descriptor, tagged by `"type"` in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Constraint {
    Cardinality(CardinalityConstraint),
    PartitionMatroid(PartitionMatroidConstraint),
    PathWitness(PathWitnessConstraint),
    PrefixDag(PrefixDagConstraint),
    BudgetPath(BudgetPathConstraint),
}

impl Constraint {
    pub fn as_dyn(&self) -> &dyn ProbeConstraint {
        match self {
            Constraint::Cardinality(c) => c,
            Constraint::PartitionMatroid(c) => c,
            Constraint::PathWitness(c) => c,
            Constraint::PrefixDag(c) => c,
            Constraint::BudgetPath(c) => c,
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Constraint::Cardinality(_) => "cardinality",
            Constraint::PartitionMatroid(_) => "partition_matroid",
            Constraint::PathWitness(_) => "path_witness",
            Constraint::PrefixDag(_) => "prefix_dag",
            Constraint::BudgetPath(_) => "budget_path",
        }
    }

    /// Uniform or partition matroid.
    pub fn is_matroid(&self) -> bool {
        matches!(self, Constraint::Cardinality(_) | Constraint::PartitionMatroid(_))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Constraint::Cardinality(_) => Ok(()),
            Constraint::PartitionMatroid(c) => c.validate(),
            Constraint::PathWitness(c) => c.validate(),
            Constraint::PrefixDag(c) => c.validate(),
            Constraint::BudgetPath(c) => c.validate(),
        }
    }
}

impl ProbeConstraint for Constraint {
    fn ground_size(&self) -> usize {
        self.as_dyn().ground_size()
    }
    fn is_order_independent(&self) -> bool {
        self.as_dyn().is_order_independent()
    }
    fn initial(&self) -> ConstraintState {
        self.as_dyn().initial()
    }
    fn advance(&self, state: &ConstraintState, e: usize) -> Option<ConstraintState> {
        self.as_dyn().advance(state, e)
    }
    fn linear_oracle(&self, weights: &[f64]) -> Result<OracleAnswer> {
        self.as_dyn().linear_oracle(weights)
    }
    fn maximal_feasible(&self) -> Result<Vec<Subset>> {
        self.as_dyn().maximal_feasible()
    }
    fn sequence_for(&self, set: Subset) -> Result<Option<Vec<usize>>> {
        self.as_dyn().sequence_for(set)
    }
}

pub(crate) fn check_weights(n: usize, weights: &[f64]) -> Result<()> {
    if weights.len() != n {
        return Err(ProbeError::Precondition(format!(
            "oracle weights have length {}, expected {n}",
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
        return Err(ProbeError::Precondition(format!("oracle weight {w} is negative or not finite")));
    }
    Ok(())
}

/// Whether `(value, set)` beats the incumbent under the oracle tie-break.
pub(crate) fn better(value: f64, set: Subset, best: &OracleAnswer) -> bool {
    if value > best.value + TIE_EPS {
        return true;
    }
    if value < best.value - TIE_EPS {
        return false;
    }
    set.len()
        .cmp(&best.set.len())
        .then_with(|| set.lex_cmp(best.set))
        .is_lt()
}

pub(crate) fn weight_of(set: Subset, weights: &[f64]) -> f64 {
    set.iter().map(|e| weights[e]).sum()
}

/// Every feasible probe set with the first accepted ordering found by a
/// depth-first search in ascending element order.
pub fn feasible_family<C: ProbeConstraint + ?Sized>(c: &C) -> Result<BTreeMap<Subset, Vec<usize>>> {
    check_limit("feasible-set search", c.ground_size(), EXHAUSTIVE_LIMIT)?;
    let mut family = BTreeMap::new();
    let mut seen = HashSet::new();
    let mut path = Vec::new();
    fn dfs<C: ProbeConstraint + ?Sized>(
        c: &C,
        st: ConstraintState,
        path: &mut Vec<usize>,
        seen: &mut HashSet<ConstraintState>,
        family: &mut BTreeMap<Subset, Vec<usize>>,
    ) -> Result<()> {
        if !seen.insert(st) {
            return Ok(());
        }
        if seen.len() > STATE_LIMIT {
            return Err(ProbeError::StateBudget {
                what: "feasible-set search",
                limit: STATE_LIMIT,
            });
        }
        family.entry(st.probed).or_insert_with(|| path.clone());
        for e in 0..c.ground_size() {
            if let Some(next) = c.transition(&st, e) {
                path.push(e);
                dfs(c, next, path, seen, family)?;
                path.pop();
            }
        }
        Ok(())
    }
    dfs(c, c.initial(), &mut path, &mut seen, &mut family)?;
    Ok(family)
}

pub(crate) fn exhaustive_oracle<C: ProbeConstraint + ?Sized>(c: &C, weights: &[f64]) -> Result<OracleAnswer> {
    let family = feasible_family(c)?;
    let mut best = OracleAnswer {
        set: Subset::EMPTY,
        value: 0.0,
    };
    for &set in family.keys() {
        let v = weight_of(set, weights);
        if better(v, set, &best) {
            best = OracleAnswer { set, value: v };
        }
    }
    Ok(best)
}

/// Keeps the sets not contained in a larger feasible set.
pub(crate) fn maximal_only(mut sets: Vec<Subset>) -> Vec<Subset> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.lex_cmp(*b)));
    let mut kept: Vec<Subset> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| s.is_subset_of(*k)) {
            kept.push(s);
        }
    }
    kept.sort_by(|a, b| a.lex_cmp(*b));
    kept
}

pub(crate) fn exhaustive_maximal<C: ProbeConstraint + ?Sized>(c: &C) -> Result<Vec<Subset>> {
    let family = feasible_family(c)?;
    Ok(maximal_only(family.into_keys().collect()))
}

fn search_sequence<C: ProbeConstraint + ?Sized>(c: &C, set: Subset) -> Result<Option<Vec<usize>>> {
    let mut seen = HashSet::new();
    let mut path = Vec::new();
    fn dfs<C: ProbeConstraint + ?Sized>(
        c: &C,
        st: ConstraintState,
        target: Subset,
        path: &mut Vec<usize>,
        seen: &mut HashSet<ConstraintState>,
    ) -> Result<bool> {
        if st.probed == target {
            return Ok(true);
        }
        if !seen.insert(st) {
            return Ok(false);
        }
        if seen.len() > STATE_LIMIT {
            return Err(ProbeError::StateBudget {
                what: "sequence search",
                limit: STATE_LIMIT,
            });
        }
        for e in target.difference(st.probed) {
            if let Some(next) = c.transition(&st, e) {
                path.push(e);
                if dfs(c, next, target, path, seen)? {
                    return Ok(true);
                }
                path.pop();
            }
        }
        Ok(false)
    }
    if set.span() > c.ground_size() {
        return Ok(None);
    }
    Ok(dfs(c, c.initial(), set, &mut path, &mut seen)?.then_some(path))
}

/// All `k`-subsets of `pool` in lexicographic order of their element lists.
pub(crate) fn k_subsets(pool: &[usize], k: usize) -> Vec<Subset> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    fn go(pool: &[usize], k: usize, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<Subset>) {
        if chosen.len() == k {
            out.push(chosen.iter().copied().collect());
            return;
        }
        let need = k - chosen.len();
        for i in start..pool.len() {
            if pool.len() - i < need {
                break;
            }
            chosen.push(pool[i]);
            go(pool, k, i + 1, chosen, out);
            chosen.pop();
        }
    }
    go(pool, k, 0, &mut chosen, &mut out);
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Top elements by weight (positive weights only), ties toward lower index.
pub(crate) fn top_positive(pool: &[usize], weights: &[f64], k: usize) -> Vec<usize> {
    let mut cands: Vec<usize> = pool.iter().copied().filter(|&e| weights[e] > 0.0).collect();
    cands.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
    cands.truncate(k);
    cands
}
