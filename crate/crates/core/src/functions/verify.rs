//! Brute-force structural checks over every subset (or pair of subsets).

use super::{fmax, SetFunction, XosFunction};
use crate::error::{check_limit, Result};
use crate::ground::Subset;

/// Largest ground set the verifiers enumerate.
pub const VERIFY_LIMIT: usize = 12;
const TOL: f64 = 1e-9;

/// Outcome of a check, with a counterexample when it fails.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// A pair with `f(A ∪ B) + f(A ∩ B) > f(A) + f(B)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubmodularViolation {
    pub a: Subset,
    pub b: Subset,
}

/// `smaller ⊂ larger` with `f(smaller) > f(larger)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonotoneViolation {
    pub smaller: Subset,
    pub larger: Subset,
}

fn tabulate(f: &dyn SetFunction) -> Result<Vec<f64>> {
    let n = f.ground_size();
    check_limit("verifier", n, VERIFY_LIMIT)?;
    Ok((0..1u32 << n).map(|b| f.eval(Subset::from_bits(b))).collect())
}

/// Checks `f(A ∪ B) + f(A ∩ B) <= f(A) + f(B)` for all pairs.
pub fn verify_submodular(f: &dyn SetFunction) -> Result<Verdict<SubmodularViolation>> {
    let t = tabulate(f)?;
    let size = t.len();
    for a in 0..size {
        for b in (a + 1)..size {
            if t[a | b] + t[a & b] > t[a] + t[b] + TOL {
                return Ok(Verdict::Fails(SubmodularViolation {
                    a: Subset::from_bits(a as u32),
                    b: Subset::from_bits(b as u32),
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Checks `f(S) <= f(S + e)` for every cover relation `S ⊂ S + e`.
pub fn verify_monotone(f: &dyn SetFunction) -> Result<Verdict<MonotoneViolation>> {
    let t = tabulate(f)?;
    let n = f.ground_size();
    for s in 0..t.len() {
        for e in 0..n {
            let bigger = s | (1 << e);
            if bigger != s && t[s] > t[bigger] + TOL {
                return Ok(Verdict::Fails(MonotoneViolation {
                    smaller: Subset::from_bits(s as u32),
                    larger: Subset::from_bits(bigger as u32),
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Checks `f(S) >= 0` everywhere; the witness is a negative set.
pub fn verify_nonnegative(f: &dyn SetFunction) -> Result<Verdict<Subset>> {
    let t = tabulate(f)?;
    Ok(t.iter()
        .position(|&v| v < -TOL)
        .map_or(Verdict::Holds, |b| Verdict::Fails(Subset::from_bits(b as u32))))
}

/// For a non-negative XOS function, `f^max` coincides with `f` on every set.
pub fn xos_fmax_matches(f: &XosFunction) -> Result<Verdict<Subset>> {
    check_limit("verifier", f.ground_size(), VERIFY_LIMIT)?;
    for s in Subset::full(f.ground_size()).subsets() {
        if (fmax(f, s)? - f.eval(s)).abs() > TOL {
            return Ok(Verdict::Fails(s));
        }
    }
    Ok(Verdict::Holds)
}

/// Runs the verifiers implied by the declared class.
///
/// Returns a human-readable description of the first failure.
pub fn verify_class(f: &dyn SetFunction) -> Result<Option<String>> {
    if let Verdict::Fails(s) = verify_nonnegative(f)? {
        return Ok(Some(format!("negative value on {s:?}")));
    }
    let class = f.class();
    if class.is_monotone() {
        if let Verdict::Fails(w) = verify_monotone(f)? {
            return Ok(Some(format!("declared {class:?} but not monotone: {w:?}")));
        }
    }
    if class.is_submodular() {
        if let Verdict::Fails(w) = verify_submodular(f)? {
            return Ok(Some(format!("declared {class:?} but not submodular: {w:?}")));
        }
    }
    Ok(None)
}
