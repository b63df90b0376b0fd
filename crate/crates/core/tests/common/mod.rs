//! Brute-force reference implementations, written independently of the
//! library's solvers: no memoization, no tables, only `eval`, the constraint
//! automaton and direct enumeration.

#![allow(dead_code)]

use stochprobe::constraints::{ConstraintState, ProbeConstraint};
use stochprobe::functions::SetFunction;
use stochprobe::instances::Instance;
use stochprobe::Subset;

/// `max_{T ⊆ s} f(T)` by walking every submask.
pub fn fmax_brute(f: &dyn SetFunction, s: Subset) -> f64 {
    let bits = s.bits();
    let mut sub = bits;
    let mut best = f64::NEG_INFINITY;
    loop {
        best = best.max(f.eval(Subset::from_bits(sub)));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
    best
}

/// `Σ_{R ⊆ s} Pr[R] value(R)` with `Pr` from independent `probs`.
pub fn expectation(s: Subset, probs: &[f64], mut value: impl FnMut(Subset) -> f64) -> f64 {
    let elems: Vec<usize> = (0..32).filter(|&e| s.bits() & (1 << e) != 0).collect();
    let mut total = 0.0;
    for mask in 0u32..(1 << elems.len()) {
        let mut pr = 1.0;
        let mut r = 0u32;
        for (i, &e) in elems.iter().enumerate() {
            if mask & (1 << i) != 0 {
                pr *= probs[e];
                r |= 1 << e;
            } else {
                pr *= 1.0 - probs[e];
            }
        }
        total += pr * value(Subset::from_bits(r));
    }
    total
}

/// Optimal adaptive value by plain recursion over probe choices.
pub fn adaptive_brute(inst: &Instance) -> f64 {
    fn go(inst: &Instance, st: ConstraintState, active: Subset) -> f64 {
        let c = inst.constraint();
        let mut best = fmax_brute(inst.objective(), active);
        for e in 0..inst.n() {
            if let Some(next) = c.transition(&st, e) {
                let p = inst.ground().p(e);
                let v = p * go(inst, next, active.with(e)) + (1.0 - p) * go(inst, next, active);
                best = best.max(v);
            }
        }
        best
    }
    go(inst, inst.constraint().initial(), Subset::EMPTY)
}

/// Whether some ordering of `s` is accepted, by depth-first search over
/// orderings that stops extending rejected prefixes.
pub fn feasible_brute(c: &dyn ProbeConstraint, s: Subset) -> bool {
    fn go(c: &dyn ProbeConstraint, st: ConstraintState, left: Subset) -> bool {
        left.is_empty()
            || left
                .iter()
                .any(|e| c.transition(&st, e).is_some_and(|next| go(c, next, left.without(e))))
    }
    go(c, c.initial(), s)
}

/// Every feasible probe set.
pub fn feasible_sets(c: &dyn ProbeConstraint) -> Vec<Subset> {
    (0u32..(1 << c.ground_size()))
        .map(Subset::from_bits)
        .filter(|&s| feasible_brute(c, s))
        .collect()
}

/// Best non-adaptive value over every feasible set.
pub fn nonadaptive_brute(inst: &Instance) -> f64 {
    feasible_sets(inst.constraint())
        .into_iter()
        .map(|s| expectation(s, inst.ground().probs(), |r| fmax_brute(inst.objective(), r)))
        .fold(0.0, f64::max)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
