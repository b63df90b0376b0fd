//! Non-adaptive probe plans: exact evaluation, exact optimum, the natural
//! strategy derived from a tree, greedy, and the XOS threshold algorithm.

mod xos;

use serde::{Deserialize, Serialize};

pub use xos::{lambda_paper, lambda_practical, oracle_call_count, xos_algorithm1, XosCandidate, XosRun};

use crate::adaptive::{self, FmaxCache, StrategyTree};
use crate::constraints::{feasible_family, ConstraintState, ProbeConstraint, EXHAUSTIVE_LIMIT};
use crate::error::{check_limit, ProbeError, Result};
use crate::functions::{check_ground, SetFunction, TIE_EPS};
use crate::ground::{expect_over, GroundSet, Subset, MAX_OUTCOME_SET};
use crate::instances::Instance;

/// A fixed probe sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PlanRepr", into = "PlanRepr")]
pub struct ProbePlan {
    sequence: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PlanRepr {
    sequence: Vec<usize>,
}

impl TryFrom<PlanRepr> for ProbePlan {
    type Error = ProbeError;
    fn try_from(r: PlanRepr) -> Result<Self> {
        ProbePlan::new(r.sequence)
    }
}

impl From<ProbePlan> for PlanRepr {
    fn from(p: ProbePlan) -> Self {
        PlanRepr { sequence: p.sequence }
    }
}

impl ProbePlan {
    /// Rejects repeated elements.
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let mut seen = Subset::EMPTY;
        for &e in &sequence {
            if e >= 32 || seen.contains(e) {
                return Err(ProbeError::Precondition(format!("plan repeats or overflows at element {e}")));
            }
            seen = seen.with(e);
        }
        Ok(ProbePlan { sequence })
    }

    pub fn empty() -> Self {
        ProbePlan::default()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn set(&self) -> Subset {
        self.sequence.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Automaton states after each probe, or `None` if the plan is infeasible.
    pub fn trace(&self, c: &dyn ProbeConstraint) -> Option<Vec<ConstraintState>> {
        let mut st = c.initial();
        let mut out = Vec::with_capacity(self.sequence.len());
        for &e in &self.sequence {
            st = c.transition(&st, e)?;
            out.push(st);
        }
        Some(out)
    }

    pub fn is_feasible(&self, c: &dyn ProbeConstraint) -> bool {
        c.accepts(&self.sequence)
    }

    /// The tree that probes the plan regardless of outcomes.
    pub fn to_tree(&self) -> StrategyTree {
        StrategyTree::chain(&self.sequence)
    }
}

/// How a plan's value is measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanObjective {
    /// `E_A[f^max(A ∩ S)]`.
    #[default]
    Exact,
    /// `E_A E_{R ~ 1/2}[f(A ∩ S ∩ R)]`, within a factor 4 of the exact value
    /// for non-negative submodular `f`.
    HalfSampling,
}

/// `E_{A ~ X(p)}[f^max(A ∩ plan)]`.
pub fn plan_value(plan: &ProbePlan, f: &dyn SetFunction, g: &GroundSet) -> Result<f64> {
    check_ground(f, g)?;
    let s = plan.set();
    g.check_subset(s)?;
    crate::functions::expected_fmax(f, s, g)
}

/// Half-sampling surrogate of [`plan_value`]: each element of the plan
/// counts independently with probability `p_e / 2`, and `f` (not `f^max`)
/// is evaluated.
pub fn plan_value_half_sampled(plan: &ProbePlan, f: &dyn SetFunction, g: &GroundSet) -> Result<f64> {
    check_ground(f, g)?;
    let s = plan.set();
    g.check_subset(s)?;
    check_limit("plan value", s.len(), MAX_OUTCOME_SET)?;
    let halved: Vec<f64> = g.probs().iter().map(|p| p / 2.0).collect();
    Ok(expect_over(s, &halved, |r| f.eval(r)))
}

/// Exact best non-adaptive plan under the exact objective.
pub fn opt_nonadaptive(inst: &Instance) -> Result<(f64, ProbePlan)> {
    opt_nonadaptive_with(inst, PlanObjective::Exact)
}

/// Exact best plan under `objective`; the returned value is measured by the
/// same objective.
///
/// The exact objective is monotone in the probed set, so only maximal
/// feasible sets are scored. The surrogate is not, so every feasible set is.
/// Ties keep the first set in enumeration order.
pub fn opt_nonadaptive_with(inst: &Instance, objective: PlanObjective) -> Result<(f64, ProbePlan)> {
    check_limit("non-adaptive optimum", inst.n(), EXHAUSTIVE_LIMIT)?;
    let c = inst.constraint();
    let g = inst.ground();
    let f = inst.objective();
    let mut best = (f64::NEG_INFINITY, Subset::EMPTY);
    match objective {
        PlanObjective::Exact => {
            let mut cache = FmaxCache::new(f)?;
            for s in c.maximal_feasible()? {
                let v = cache.expected(s, g)?;
                if v > best.0 + TIE_EPS {
                    best = (v, s);
                }
            }
        }
        PlanObjective::HalfSampling => {
            let halved: Vec<f64> = g.probs().iter().map(|p| p / 2.0).collect();
            for (s, _) in feasible_family(c)? {
                let v = expect_over(s, &halved, |r| f.eval(r));
                if v > best.0 + TIE_EPS {
                    best = (v, s);
                }
            }
        }
    }
    let seq = c
        .sequence_for(best.1)?
        .ok_or_else(|| ProbeError::Precondition("optimal set has no feasible ordering".into()))?;
    Ok((best.0.max(0.0), ProbePlan::new(seq)?))
}

/// Value of the natural non-adaptive strategy for `tree`: sample a leaf by
/// the tree's own outcome distribution and probe its path afresh.
pub fn natural_nonadaptive(tree: &StrategyTree, f: &dyn SetFunction, g: &GroundSet) -> Result<f64> {
    adaptive::alg_value(tree, f, g)
}

/// Greedy plan for monotone submodular objectives under matroid constraints.
///
/// Repeatedly appends the feasible element with the largest gain in exact
/// plan value (lowest index on ties) until no element gains anything.
pub fn greedy_nonadaptive(inst: &Instance) -> Result<(f64, ProbePlan)> {
    let f = inst.objective();
    let class = f.class();
    if !(class.is_monotone() && class.is_submodular()) {
        return Err(ProbeError::Precondition(format!(
            "greedy needs a monotone submodular objective, got {class:?}"
        )));
    }
    let c = inst.constraint();
    if !c.is_matroid() {
        return Err(ProbeError::Precondition(format!(
            "greedy needs a cardinality or partition-matroid constraint, got {}",
            c.type_name()
        )));
    }
    let g = inst.ground();
    let mut cache = FmaxCache::new(f)?;
    let mut st = c.initial();
    let mut set = Subset::EMPTY;
    let mut seq = Vec::new();
    let mut value = 0.0;
    loop {
        let mut pick: Option<(usize, f64)> = None;
        for e in c.feasible_next(&st) {
            let v = cache.expected(set.with(e), g)?;
            if v > pick.map_or(value, |(_, b)| b) + TIE_EPS {
                pick = Some((e, v));
            }
        }
        let Some((e, v)) = pick else { break };
        st = c.transition(&st, e).expect("feasible element");
        set = set.with(e);
        seq.push(e);
        value = v;
    }
    Ok((value, ProbePlan::new(seq)?))
}

/// Exact values for one instance: adaptive and non-adaptive optima, the
/// natural strategy on the optimal tree, and the algorithms that apply.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub digest: String,
    pub family: String,
    pub n: usize,
    pub class: crate::functions::FunctionClass,
    pub constraint: String,
    pub adap_opt: f64,
    pub nonadap_opt: f64,
    pub natural_nonadaptive: f64,
    #[serde(default)]
    pub greedy: Option<f64>,
    #[serde(default)]
    pub xos_alg1: Option<f64>,
    #[serde(default)]
    pub xos_oracle_calls: Option<usize>,
    #[serde(default)]
    pub xos_lambda: Option<f64>,
    /// `adap_opt / nonadap_opt` (1 when both vanish).
    pub gap: f64,
    /// `natural_nonadaptive / adap_opt` (1 when both vanish).
    pub natural_ratio: f64,
    pub nonadap_plan: ProbePlan,
    /// Class-conditional gap bounds that apply to this instance.
    #[serde(default)]
    pub theorems: Vec<TheoremCheck>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// One class-conditional bound `nonadap_opt ≥ adap_opt / factor`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub name: String,
    pub factor: f64,
    pub holds: bool,
}

impl GapReport {
    /// Names of violated bounds.
    pub fn violations(&self) -> Vec<&str> {
        self.theorems.iter().filter(|t| !t.holds).map(|t| t.name.as_str()).collect()
    }
}

/// `num / den`, with `0 / 0 = 1`.
pub fn safe_ratio(num: f64, den: f64) -> f64 {
    if den.abs() <= 1e-15 {
        if num.abs() <= 1e-15 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        num / den
    }
}
