use serde::{Deserialize, Serialize};

use crate::error::{check_limit, ProbeError, Result};
use crate::functions::{FunctionClass, SetFunction};
use crate::ground::{expect_over, Subset};

/// Tolerance for the exact inequality checks.
pub const CHECK_EPS: f64 = 1e-12;
/// Longest stem cross-checked by brute force.
pub const STEMMASS_LIMIT: usize = 16;

/// Both sides of an inequality `lhs ≥ rhs` (or `≤`, per the check).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

fn check_probs(a: &[f64]) -> Result<()> {
    for (index, &value) in a.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(ProbeError::InvalidProbability { index, value });
        }
    }
    Ok(())
}

/// `Σ a_i (Π_{j<i} b_j)² ≥ ½ Σ a_i Π_{j<i} b_j` with `b_j = 1 − a_j`.
pub fn stem_inequality(a: &[f64]) -> Result<Comparison> {
    check_probs(a)?;
    let (lhs, half) = stem_sums(a);
    Ok(Comparison {
        lhs,
        rhs: 0.5 * half,
        holds: lhs >= 0.5 * half - CHECK_EPS,
    })
}

/// `(Σ a_i (Π b_j)², Σ a_i Π b_j)`.
fn stem_sums(a: &[f64]) -> (f64, f64) {
    let mut reach = 1.0;
    let (mut sq, mut lin) = (0.0, 0.0);
    for &ai in a {
        sq += ai * reach * reach;
        lin += ai * reach;
        reach *= 1.0 - ai;
    }
    (sq, lin)
}

/// `Σ a_i (Π b_j)² / Σ a_i Π b_j`, the quantity that approaches ½ on long
/// stems of small probabilities. `None` when the denominator vanishes.
pub fn stem_ratio(a: &[f64]) -> Result<Option<f64>> {
    check_probs(a)?;
    let (sq, lin) = stem_sums(a);
    Ok((lin > 0.0).then(|| sq / lin))
}

/// A stem: activation probabilities of its elements in order, and their
/// singleton values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StemInstance {
    pub probs: Vec<f64>,
    pub values: Vec<f64>,
}

impl StemInstance {
    pub fn new(probs: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_probs(&probs)?;
        if probs.len() != values.len() {
            return Err(ProbeError::Precondition(format!(
                "{} probabilities but {} values",
                probs.len(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(ProbeError::Precondition(format!("stem value {v} is not a non-negative number")));
        }
        Ok(StemInstance { probs, values })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// `Pr[I = i]` for the exit index `i = 0..m`, then the leaf.
    fn exit_probs(&self) -> (Vec<f64>, f64) {
        let mut reach = 1.0;
        let mut out = Vec::with_capacity(self.len());
        for &p in &self.probs {
            out.push(reach * p);
            reach *= 1.0 - p;
        }
        (out, reach)
    }

    /// `∫ h(W_x) dx` over the level sets `W_x = {i : value_i ≥ x}`, as a finite
    /// sum over the sorted distinct positive values.
    fn integrate(&self, h: impl Fn(&[bool]) -> f64) -> f64 {
        let mut levels: Vec<f64> = self.values.iter().copied().filter(|&v| v > 0.0).collect();
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        let mut total = 0.0;
        let mut prev = 0.0;
        for x in levels {
            let members: Vec<bool> = self.values.iter().map(|&v| v >= x).collect();
            total += (x - prev) * h(&members);
            prev = x;
        }
        total
    }
}

/// Closed forms and brute force for the stem-mass inequality
/// `E_{I,R ~ S_I(p)}[max_{e ∈ R} f(e)] ≥ ½ E_I[f(e_I)]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StemMass {
    /// Closed form of `E_{I,R}[max_{e ∈ R} f(e)]`.
    pub lhs: f64,
    /// Closed form of `½ E_I[f(e_I)]`.
    pub rhs: f64,
    /// Enumeration of `E_{I,R}[max_{e ∈ R} f(e)]`.
    pub brute_lhs: f64,
    /// Direct sum for `½ E_I[f(e_I)]`.
    pub brute_rhs: f64,
    pub holds: bool,
}

impl StemMass {
    pub fn closed_forms_agree(&self) -> bool {
        (self.lhs - self.brute_lhs).abs() <= CHECK_EPS && (self.rhs - self.brute_rhs).abs() <= CHECK_EPS
    }
}

/// Here `I` is the index where the stem is left (element `i` active, all
/// earlier ones inactive) or the leaf if every element is inactive; `S_I` is
/// the prefix up to and including `e_I` (the whole stem for the leaf, whose
/// dummy element is worth 0), and `R` is a fresh activation of `S_I`.
pub fn stemmass_check(stem: &StemInstance) -> Result<StemMass> {
    check_limit("stem-mass brute force", stem.len(), STEMMASS_LIMIT)?;
    let m = stem.len();
    let p = &stem.probs;
    let lhs = stem.integrate(|w| {
        let mut reach = 1.0;
        let mut none_before = 1.0;
        let mut total = 0.0;
        for k in 0..m {
            if w[k] {
                total += reach * p[k] * none_before;
                none_before *= 1.0 - p[k];
            }
            reach *= 1.0 - p[k];
        }
        total
    });
    let (exit, leaf) = stem.exit_probs();
    let rhs = 0.5 * stem.integrate(|w| (0..m).filter(|&i| w[i]).map(|i| exit[i]).sum());

    let unit_demand = |r: Subset| r.iter().map(|e| stem.values[e]).fold(0.0, f64::max);
    let mut brute_lhs = 0.0;
    for (i, &pr) in exit.iter().enumerate() {
        if pr > 0.0 {
            brute_lhs += pr * expect_over(Subset::full(i + 1), p, unit_demand);
        }
    }
    if leaf > 0.0 {
        brute_lhs += leaf * expect_over(Subset::full(m), p, unit_demand);
    }
    let brute_rhs = 0.5 * exit.iter().zip(&stem.values).map(|(pr, v)| pr * v).sum::<f64>();
    Ok(StemMass {
        lhs,
        rhs,
        brute_lhs,
        brute_rhs,
        holds: lhs >= rhs - CHECK_EPS,
    })
}

/// `S ↦ h(S ∪ base)`.
pub struct WithBase<'a> {
    inner: &'a dyn SetFunction,
    base: Subset,
}

pub fn with_base(h: &dyn SetFunction, base: Subset) -> WithBase<'_> {
    WithBase { inner: h, base }
}

impl SetFunction for WithBase<'_> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn eval(&self, s: Subset) -> f64 {
        self.inner.eval(s.union(self.base))
    }

    fn class(&self) -> FunctionClass {
        match self.inner.class() {
            FunctionClass::Submodular | FunctionClass::MonotoneSubmodular => self.inner.class(),
            _ => FunctionClass::Arbitrary,
        }
    }
}

/// `E[f(S)] ≥ (1 − p) f(∅)` where each element joins `S` independently
/// with probability `inclusion[e] ≤ p` and `p = max_e inclusion[e]`.
pub fn bfns_check(f: &dyn SetFunction, inclusion: &[f64]) -> Result<Comparison> {
    check_probs(inclusion)?;
    if inclusion.len() != f.ground_size() {
        return Err(ProbeError::Precondition(format!(
            "{} inclusion probabilities for a function on {} elements",
            inclusion.len(),
            f.ground_size()
        )));
    }
    let support: Subset = (0..inclusion.len()).filter(|&e| inclusion[e] > 0.0).collect();
    check_limit("BFNS expectation", support.len(), crate::ground::MAX_OUTCOME_SET)?;
    let p = inclusion.iter().copied().fold(0.0, f64::max);
    let lhs = expect_over(support, inclusion, |s| f.eval(s));
    let rhs = (1.0 - p) * f.eval(Subset::EMPTY);
    Ok(Comparison {
        lhs,
        rhs,
        holds: lhs >= rhs - CHECK_EPS,
    })
}

/// A finite distribution on the reals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteDist {
    values: Vec<f64>,
    probs: Vec<f64>,
}

impl DiscreteDist {
    pub fn new(values: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        check_probs(&probs)?;
        if values.len() != probs.len() || values.is_empty() {
            return Err(ProbeError::Precondition("distribution needs matching, non-empty supports".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(ProbeError::Precondition(format!("probabilities sum to {total}")));
        }
        Ok(DiscreteDist { values, probs })
    }

    pub fn point(v: f64) -> Self {
        DiscreteDist {
            values: vec![v],
            probs: vec![1.0],
        }
    }

    pub fn uniform(values: Vec<f64>) -> Result<Self> {
        let k = values.len();
        DiscreteDist::new(values, vec![1.0 / k as f64; k])
    }

    fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().copied().zip(self.probs.iter().copied())
    }
}

/// `E[max(X + Y, X + Z)] ≤ E[max(X + Y, X' + Z)]` for independent `X, Y, Z`
/// and an independent copy `X'` of `X`; `lhs` and `rhs` are the two sides.
pub fn disjointify_fact_check(x: &DiscreteDist, y: &DiscreteDist, z: &DiscreteDist) -> Comparison {
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for (xv, xp) in x.atoms() {
        for (yv, yp) in y.atoms() {
            for (zv, zp) in z.atoms() {
                let w = xp * yp * zp;
                lhs += w * (xv + yv).max(xv + zv);
                for (xv2, xp2) in x.atoms() {
                    rhs += w * xp2 * (xv + yv).max(xv2 + zv);
                }
            }
        }
    }
    Comparison {
        lhs,
        rhs,
        holds: lhs <= rhs + CHECK_EPS,
    }
}
