//! Set functions, `f^max`, contractions and structural verifiers.

mod coverage;
mod families;
mod verify;
mod xos;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use coverage::CoverageFunction;
pub use families::{AllTypesFunction, CutFunction, PartitionRank, TableFunction};
pub use verify::{
    verify_class, verify_monotone, verify_nonnegative, verify_submodular, xos_fmax_matches,
    MonotoneViolation, SubmodularViolation, Verdict, VERIFY_LIMIT,
};
pub use xos::XosFunction;

use crate::error::{check_limit, ProbeError, Result};
use crate::ground::{GroundSet, Subset, MAX_OUTCOME_SET};
use crate::rng;

/// Values closer than this are treated as ties.
pub const TIE_EPS: f64 = 1e-12;

/// Declared structural class of a set function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionClass {
    MonotoneSubmodular,
    Submodular,
    Xos,
    Arbitrary,
}

impl FunctionClass {
    pub fn is_submodular(self) -> bool {
        matches!(self, FunctionClass::MonotoneSubmodular | FunctionClass::Submodular)
    }

    pub fn is_monotone(self) -> bool {
        matches!(self, FunctionClass::MonotoneSubmodular | FunctionClass::Xos)
    }
}

/// A set function `f: 2^X -> R` with `f(∅) = 0`.
pub trait SetFunction: Send + Sync {
    fn ground_size(&self) -> usize;
    fn eval(&self, s: Subset) -> f64;
    fn class(&self) -> FunctionClass;
}

impl<T: SetFunction + ?Sized> SetFunction for &T {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn eval(&self, s: Subset) -> f64 {
        (**self).eval(s)
    }
    fn class(&self) -> FunctionClass {
        (**self).class()
    }
}

impl<T: SetFunction + ?Sized> SetFunction for Box<T> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn eval(&self, s: Subset) -> f64 {
        (**self).eval(s)
    }
    fn class(&self) -> FunctionClass {
        (**self).class()
    }
}

/// Objective descriptor, tagged by `"type"` in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Objective {
    Coverage(CoverageFunction),
    Table(TableFunction),
    Xos(XosFunction),
    PartitionRank(PartitionRank),
    Cut(CutFunction),
    AllTypes(AllTypesFunction),
}

impl Objective {
    pub fn as_dyn(&self) -> &dyn SetFunction {
        match self {
            Objective::Coverage(f) => f,
            Objective::Table(f) => f,
            Objective::Xos(f) => f,
            Objective::PartitionRank(f) => f,
            Objective::Cut(f) => f,
            Objective::AllTypes(f) => f,
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Objective::Coverage(_) => "coverage",
            Objective::Table(_) => "table",
            Objective::Xos(_) => "xos",
            Objective::PartitionRank(_) => "partition_rank",
            Objective::Cut(_) => "cut",
            Objective::AllTypes(_) => "all_types",
        }
    }

    /// Re-checks constructor invariants (used after deserialization).
    pub fn validate(&self) -> Result<()> {
        match self {
            Objective::Coverage(f) => f.validate(),
            Objective::Table(f) => f.validate(),
            Objective::Xos(f) => f.validate(),
            Objective::PartitionRank(f) => f.validate(),
            Objective::Cut(f) => f.validate(),
            Objective::AllTypes(f) => f.validate(),
        }
    }
}

impl SetFunction for Objective {
    fn ground_size(&self) -> usize {
        self.as_dyn().ground_size()
    }
    fn eval(&self, s: Subset) -> f64 {
        self.as_dyn().eval(s)
    }
    fn class(&self) -> FunctionClass {
        self.as_dyn().class()
    }
}

/// `f^max(S) = max_{T ⊆ S} f(T)` by direct enumeration of the subsets of `S`.
pub fn fmax(f: &dyn SetFunction, s: Subset) -> Result<f64> {
    fmax_witness(f, s).map(|(v, _)| v)
}

/// `f^max(S)` together with the lexicographically smallest maximizer.
pub fn fmax_witness(f: &dyn SetFunction, s: Subset) -> Result<(f64, Subset)> {
    check_limit("fmax", s.len(), MAX_OUTCOME_SET)?;
    let mut best = (0.0, Subset::EMPTY);
    for t in s.subsets() {
        let v = f.eval(t);
        if v > best.0 + TIE_EPS
            || ((v - best.0).abs() <= TIE_EPS && t.lex_cmp(best.1).is_lt())
        {
            best = (v, t);
        }
    }
    Ok(best)
}

/// `f` and `f^max` tabulated over every subset of the ground set.
///
/// `f^max` is filled by the recurrence `fmax(S) = max(f(S), max_e fmax(S - e))`,
/// which needs `n 2^n` comparisons instead of `3^n`.
#[derive(Clone, Debug)]
pub struct FmaxTable {
    n: usize,
    values: Vec<f64>,
    fmax: Vec<f64>,
}

pub const TABLE_LIMIT: usize = 20;

impl FmaxTable {
    pub fn new(f: &dyn SetFunction) -> Result<Self> {
        let n = f.ground_size();
        check_limit("fmax table", n, TABLE_LIMIT)?;
        let size = 1usize << n;
        let values: Vec<f64> = (0..size).map(|b| f.eval(Subset::from_bits(b as u32))).collect();
        let mut fmax = values.clone();
        for b in 1..size {
            let mut rest = b;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                rest ^= low;
                let sub = fmax[b ^ low];
                if sub > fmax[b] {
                    fmax[b] = sub;
                }
            }
        }
        Ok(FmaxTable { n, values, fmax })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn value(&self, s: Subset) -> f64 {
        self.values[s.bits() as usize]
    }

    pub fn fmax(&self, s: Subset) -> f64 {
        self.fmax[s.bits() as usize]
    }
}

/// Exact `E_{R ~ S(1/2)}[f(R)]`.
pub fn fmax_half_estimate(f: &dyn SetFunction, s: Subset) -> Result<f64> {
    check_limit("half-sampling estimate", s.len(), MAX_OUTCOME_SET)?;
    let total: f64 = s.subsets().map(|r| f.eval(r)).sum();
    Ok(total / (1u64 << s.len()) as f64)
}

/// Monte-Carlo version of [`fmax_half_estimate`] for sets too large to enumerate.
pub fn fmax_half_sampled(f: &dyn SetFunction, s: Subset, samples: usize, seed: u64) -> f64 {
    if samples == 0 {
        return 0.0;
    }
    let mut rng = rng::seeded(seed);
    let total: f64 = (0..samples)
        .map(|_| {
            let r: Subset = s.iter().filter(|_| rng.gen::<bool>()).collect();
            f.eval(r)
        })
        .sum();
    total / samples as f64
}

/// The contracted function `f_B(T) = f(B ∪ T) - f(B)`.
pub struct Contracted<'a> {
    inner: &'a dyn SetFunction,
    base: Subset,
    base_value: f64,
}

pub fn contract(f: &dyn SetFunction, base: Subset) -> Contracted<'_> {
    Contracted {
        inner: f,
        base,
        base_value: f.eval(base),
    }
}

impl Contracted<'_> {
    pub fn base(&self) -> Subset {
        self.base
    }
}

impl SetFunction for Contracted<'_> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn eval(&self, t: Subset) -> f64 {
        self.inner.eval(self.base.union(t)) - self.base_value
    }

    fn class(&self) -> FunctionClass {
        match self.inner.class() {
            FunctionClass::MonotoneSubmodular => FunctionClass::MonotoneSubmodular,
            _ => FunctionClass::Arbitrary,
        }
    }
}

/// `f` restricted to a ground set of the same size; checks index compatibility.
pub(crate) fn check_ground(f: &dyn SetFunction, g: &GroundSet) -> Result<()> {
    if f.ground_size() != g.len() {
        return Err(ProbeError::InvalidInstance(format!(
            "objective is defined on {} elements but the ground set has {}",
            f.ground_size(),
            g.len()
        )));
    }
    Ok(())
}

/// `E_{R ~ S(p)}[f^max(R)]`, using a table restricted to `S`.
pub fn expected_fmax(f: &dyn SetFunction, s: Subset, g: &GroundSet) -> Result<f64> {
    check_limit("expected fmax", s.len(), MAX_OUTCOME_SET)?;
    let elems = s.to_vec();
    let k = elems.len();
    let local = |b: usize| -> Subset {
        elems
            .iter()
            .enumerate()
            .filter(|(i, _)| b & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect()
    };
    let mut table: Vec<f64> = (0..1usize << k).map(|b| f.eval(local(b))).collect();
    for b in 1..table.len() {
        for i in 0..k {
            if b & (1 << i) != 0 && table[b ^ (1 << i)] > table[b] {
                table[b] = table[b ^ (1 << i)];
            }
        }
    }
    let probs = g.probs();
    let mut total = 0.0;
    for (b, &v) in table.iter().enumerate() {
        let mut pr = 1.0;
        for (i, &e) in elems.iter().enumerate() {
            pr *= if b & (1 << i) != 0 { probs[e] } else { 1.0 - probs[e] };
        }
        total += pr * v;
    }
    Ok(total)
}
