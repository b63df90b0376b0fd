use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adaptive::StrategyTree;
use crate::error::{ProbeError, Result};
use crate::functions::{Objective, XosFunction};
use crate::ground::{GroundSet, Subset};
use crate::instances::Instance;
use crate::rng;

/// Samples per parallel block; block `b` draws from stream `b` of the seed.
const BLOCK: usize = 1024;

/// Empirical frequency, per linear function `a_i`, of the realized value
/// `a_i(A_ℓ)` deviating from its path mean `μ_i(P_ℓ) = Σ_{e ∈ P_ℓ} p_e a_i(e)`
/// by more than `0.1 · opt`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub samples: usize,
    pub seed: u64,
    pub threshold: f64,
    pub exceedance: Vec<f64>,
    /// `1 / W²`, the bound that holds for the truncated trees of the analysis
    /// (reported for comparison only).
    pub reference_bound: f64,
}

/// Monte-Carlo concentration experiment. Diagnostic only: nothing is
/// asserted about the frequencies.
pub fn concentration_experiment(
    inst: &Instance,
    tree: &StrategyTree,
    opt: f64,
    samples: usize,
    seed: u64,
) -> Result<ConcentrationReport> {
    let Objective::Xos(f) = inst.objective() else {
        return Err(ProbeError::Precondition("concentration experiment needs an xos objective".into()));
    };
    tree.check_structure(inst.n())?;
    let g = inst.ground();
    let threshold = 0.1 * opt;
    let blocks = samples.div_ceil(BLOCK);
    let counts: Vec<Vec<usize>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = rng::split(seed, b as u64);
            let size = BLOCK.min(samples - b * BLOCK);
            let mut counts = vec![0; f.width()];
            for _ in 0..size {
                let (path, active) = walk(tree, g, &mut rng);
                for (i, c) in counts.iter_mut().enumerate() {
                    if deviation(f, g, i, path, active) > threshold {
                        *c += 1;
                    }
                }
            }
            counts
        })
        .collect();
    let mut total = vec![0usize; f.width()];
    for block in counts {
        for (t, c) in total.iter_mut().zip(block) {
            *t += c;
        }
    }
    let w = f.width().max(1) as f64;
    Ok(ConcentrationReport {
        samples,
        seed,
        threshold,
        exceedance: total
            .into_iter()
            .map(|c| if samples == 0 { 0.0 } else { c as f64 / samples as f64 })
            .collect(),
        reference_bound: 1.0 / (w * w),
    })
}

fn walk<R: Rng>(tree: &StrategyTree, g: &GroundSet, rng: &mut R) -> (Subset, Subset) {
    let (mut path, mut active) = (Subset::EMPTY, Subset::EMPTY);
    let mut cur = tree;
    while let StrategyTree::Node { elt, yes, no } = cur {
        path = path.with(*elt);
        if rng.gen::<f64>() < g.p(*elt) {
            active = active.with(*elt);
            cur = yes;
        } else {
            cur = no;
        }
    }
    (path, active)
}

fn deviation(f: &XosFunction, g: &GroundSet, i: usize, path: Subset, active: Subset) -> f64 {
    let mean: f64 = path.iter().map(|e| g.p(e) * f.coefficient(i, e)).sum();
    (f.row_sum(i, active) - mean).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adaptive::opt_adaptive;
    use crate::constraints::{CardinalityConstraint, Constraint};
    use crate::instances::{gen_xos_tree_lb, Metadata, TreeVariant};

    #[test]
    fn deterministic_activation_has_no_deviation() {
        let inst = Instance::new(
            GroundSet::uniform(3, 1.0).unwrap(),
            Objective::Xos(XosFunction::linear(vec![1.0, 2.0, 3.0]).unwrap()),
            Constraint::Cardinality(CardinalityConstraint::new(3, 3)),
            Metadata::default(),
        )
        .unwrap();
        let r = concentration_experiment(&inst, &StrategyTree::chain(&[0, 1, 2]), 6.0, 500, 1).unwrap();
        assert_eq!(r.exceedance, vec![0.0]);
    }

    #[test]
    fn zero_coefficients_never_deviate() {
        let inst = Instance::new(
            GroundSet::uniform(2, 0.5).unwrap(),
            Objective::Xos(XosFunction::new(2, vec![vec![0.0, 0.0]; 2]).unwrap()),
            Constraint::Cardinality(CardinalityConstraint::new(2, 2)),
            Metadata::default(),
        )
        .unwrap();
        let r = concentration_experiment(&inst, &StrategyTree::chain(&[0, 1]), 0.0, 300, 2).unwrap();
        assert_eq!(r.exceedance, vec![0.0, 0.0]);
    }

    #[test]
    fn tree_instance_is_reproducible() {
        let inst = gen_xos_tree_lb(2, 2, TreeVariant::PathWitness).unwrap();
        let (opt, tree) = opt_adaptive(&inst).unwrap();
        let a = concentration_experiment(&inst, &tree, opt, 10_000, 3).unwrap();
        let b = concentration_experiment(&inst, &tree, opt, 10_000, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.exceedance.len(), 4);
        assert!(a.exceedance.iter().all(|&x| (0.0..=1.0).contains(&x)));
    }
}
