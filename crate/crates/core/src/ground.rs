//! Ground sets, subsets and activation outcomes.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_limit, ProbeError, Result};
use crate::rng;

/// Largest ground set the crate accepts at all.
pub const MAX_GROUND: usize = 24;
/// Largest set whose activation outcomes are enumerated explicitly.
pub const MAX_OUTCOME_SET: usize = 20;

/// A subset of the ground set stored as a bit mask.
///
/// Iteration is always in ascending element order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        Subset(1 << e)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(items: I) -> Self {
        items.into_iter().fold(Subset::EMPTY, |s, e| s.with(e))
    }

    pub fn contains(self, e: usize) -> bool {
        e < 32 && self.0 & (1 << e) != 0
    }

    #[must_use]
    pub fn with(self, e: usize) -> Self {
        Subset(self.0 | (1 << e))
    }

    #[must_use]
    pub fn without(self, e: usize) -> Self {
        Subset(self.0 & !(1 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest index + 1, or 0 for the empty set.
    pub fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing bit-mask order, starting at the empty set.
    pub fn subsets(self) -> SubmaskIter {
        SubmaskIter {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Lexicographic comparison of the ascending element lists.
    pub fn lex_cmp(self, other: Subset) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_indices(iter)
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = SubsetIter;
    fn into_iter(self) -> SubsetIter {
        self.iter()
    }
}

pub struct SubsetIter(u32);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

/// Enumerates submasks in increasing numeric order: `(x - mask) & mask` trick.
pub struct SubmaskIter {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for SubmaskIter {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(Subset(cur))
    }
}

/// Elements `0..n` with independent activation probabilities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundSet {
    probs: Vec<f64>,
}

impl GroundSet {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_limit("ground set", probs.len(), MAX_GROUND)?;
        for (index, &value) in probs.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(ProbeError::InvalidProbability { index, value });
            }
        }
        Ok(GroundSet { probs })
    }

    /// Every element active with the same probability.
    pub fn uniform(n: usize, p: f64) -> Result<Self> {
        GroundSet::new(vec![p; n])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn p(&self, e: usize) -> f64 {
        self.probs[e]
    }

    pub fn q(&self, e: usize) -> f64 {
        1.0 - self.probs[e]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn check_subset(&self, s: Subset) -> Result<()> {
        if s.span() > self.len() {
            Err(ProbeError::IndexOutOfRange {
                index: s.span() - 1,
                n: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// Calls `visit(R, Pr[R])` for every `R ⊆ s` under independent activation.
///
/// No size check; callers bound `|s|`.
pub(crate) fn for_each_outcome<F: FnMut(Subset, f64)>(s: Subset, probs: &[f64], mut visit: F) {
    let elems = s.to_vec();
    fn go<F: FnMut(Subset, f64)>(
        elems: &[usize],
        probs: &[f64],
        acc: Subset,
        pr: f64,
        visit: &mut F,
    ) {
        match elems.split_first() {
            None => visit(acc, pr),
            Some((&e, rest)) => {
                let p = probs[e];
                go(rest, probs, acc, pr * (1.0 - p), visit);
                go(rest, probs, acc.with(e), pr * p, visit);
            }
        }
    }
    go(&elems, probs, Subset::EMPTY, 1.0, &mut visit);
}

/// Expectation of `value(R)` over `R ~ s(p)`.
pub(crate) fn expect_over<F: FnMut(Subset) -> f64>(s: Subset, probs: &[f64], mut value: F) -> f64 {
    let mut total = 0.0;
    for_each_outcome(s, probs, |r, pr| {
        if pr > 0.0 {
            total += pr * value(r);
        }
    });
    total
}

/// All `2^|s|` activation outcomes of `s` with their probabilities.
pub fn enumerate_outcomes(s: Subset, g: &GroundSet) -> Result<Vec<(Subset, f64)>> {
    g.check_subset(s)?;
    check_limit("outcome enumeration", s.len(), MAX_OUTCOME_SET)?;
    let mut out = Vec::with_capacity(1 << s.len());
    for_each_outcome(s, g.probs(), |r, pr| out.push((r, pr)));
    Ok(out)
}

/// Draws `R ~ s(p)` from a generator seeded with `seed`.
pub fn sample_subset(s: Subset, g: &GroundSet, seed: u64) -> Subset {
    sample_with(s, g.probs(), &mut rng::seeded(seed))
}

pub(crate) fn sample_with<R: Rng>(s: Subset, probs: &[f64], rng: &mut R) -> Subset {
    s.iter().filter(|&e| rng.gen::<f64>() < probs[e]).collect()
}
