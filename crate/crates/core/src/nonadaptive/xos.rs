use serde::{Deserialize, Serialize};

use super::{plan_value, ProbePlan};
use crate::constraints::ProbeConstraint;
use crate::error::{ProbeError, Result};
use crate::functions::{Objective, XosFunction};
use crate::instances::Instance;

/// Which oracle query produced a candidate set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum XosCandidate {
    /// Weights `c_i(e) = p_e a_i(e)` for linear function `i`.
    Linear(usize),
    /// Threshold weights `b_j(e) = p_e [max_i a_i(e) ≥ 2^j m / λ]`.
    Threshold(usize),
}

/// Outcome of the XOS threshold algorithm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XosRun {
    /// True expected value of the selected plan.
    pub value: f64,
    pub plan: ProbePlan,
    /// Surrogate score that won the selection.
    pub surrogate: f64,
    pub winner: XosCandidate,
    pub oracle_calls: usize,
    pub lambda: f64,
    /// `max_e p_e max_i a_i(e)`.
    pub m: f64,
}

/// The theoretical choice `λ = 1000 ln W` (W floored at 2).
pub fn lambda_paper(width: usize) -> f64 {
    1e3 * (width.max(2) as f64).ln()
}

/// Desk-scale preset `λ = 2 ln W` (W floored at 2).
pub fn lambda_practical(width: usize) -> f64 {
    2.0 * (width.max(2) as f64).ln()
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Number of linear-oracle queries the algorithm makes: `W + ⌈log₂ n⌉ + 2`.
pub fn oracle_call_count(width: usize, n: usize) -> usize {
    width + ceil_log2(n) + 2
}

/// Non-adaptive algorithm for XOS objectives `f = max_i a_i`.
///
/// Queries the constraint's linear oracle once per linear function with
/// weights `p_e a_i(e)` (scored by their weight), and once per threshold
/// level `j = 0..=1+⌈log₂ n⌉` with weights `p_e` on elements whose peak
/// coefficient reaches `2^j m / λ` (scored `2^j m / λ · min(weight, 1)`).
/// The best-scoring candidate wins, earlier candidates on ties; its true
/// plan value is reported alongside.
pub fn xos_algorithm1(inst: &Instance, lambda: f64) -> Result<XosRun> {
    let Objective::Xos(f) = inst.objective() else {
        return Err(ProbeError::Precondition(format!(
            "the XOS algorithm needs an xos objective, got {}",
            inst.objective().type_name()
        )));
    };
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(ProbeError::Precondition(format!("lambda must be positive, got {lambda}")));
    }
    let c = inst.constraint();
    let g = inst.ground();
    let n = inst.n();
    let m = (0..n).map(|e| g.p(e) * f.peak(e)).fold(0.0, f64::max);

    let mut calls = 0;
    let mut best: Option<(f64, crate::ground::Subset, XosCandidate)> = None;
    let mut consider = |score: f64, set, which| {
        if best.map_or(true, |(b, _, _)| score > b) {
            best = Some((score, set, which));
        }
    };

    for i in 0..f.width() {
        let weights: Vec<f64> = (0..n).map(|e| g.p(e) * f.coefficient(i, e)).collect();
        let ans = c.linear_oracle(&weights)?;
        calls += 1;
        consider(ans.value, ans.set, XosCandidate::Linear(i));
    }
    for j in 0..=1 + ceil_log2(n) {
        let threshold = (1u64 << j) as f64 * m / lambda;
        let weights = threshold_weights(f, g.probs(), threshold);
        let ans = c.linear_oracle(&weights)?;
        calls += 1;
        consider(threshold * ans.value.min(1.0), ans.set, XosCandidate::Threshold(j));
    }

    let (surrogate, set, winner) = best.unwrap_or((0.0, crate::ground::Subset::EMPTY, XosCandidate::Threshold(0)));
    let seq = c
        .sequence_for(set)?
        .ok_or_else(|| ProbeError::Precondition("oracle returned a set with no feasible ordering".into()))?;
    let plan = ProbePlan::new(seq)?;
    let value = plan_value(&plan, f, g)?;
    Ok(XosRun {
        value,
        plan,
        surrogate,
        winner,
        oracle_calls: calls,
        lambda,
        m,
    })
}

fn threshold_weights(f: &XosFunction, probs: &[f64], threshold: f64) -> Vec<f64> {
    probs
        .iter()
        .enumerate()
        .map(|(e, &p)| if f.peak(e) >= threshold { p } else { 0.0 })
        .collect()
}
