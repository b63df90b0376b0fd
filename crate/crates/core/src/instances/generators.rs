//! Lower-bound families and seeded random instances.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Instance, Metadata};
use crate::constraints::{
    BudgetPathConstraint, CardinalityConstraint, Constraint, KaryTree, PartitionMatroidConstraint,
    PathWitnessConstraint, PrefixDagConstraint,
};
use crate::error::{ProbeError, Result};
use crate::functions::{AllTypesFunction, CoverageFunction, CutFunction, Objective, PartitionRank, XosFunction};
use crate::ground::GroundSet;
use crate::rng::{self, ProbeRng};

/// Parameters of the partition-matroid rank family: `k` parts of
/// `part_size` elements, all active with probability `p`, probe budget
/// `budget`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionLbParams {
    pub k: usize,
    pub part_size: usize,
    pub p: f64,
    pub budget: usize,
}

impl PartitionLbParams {
    /// `k²` elements per part, `p = 1/k`, budget `k²`.
    pub fn paper(k: usize) -> Self {
        PartitionLbParams {
            k,
            part_size: k * k,
            p: 1.0 / k as f64,
            budget: k * k,
        }
    }
}

pub fn gen_partition_lb(params: PartitionLbParams) -> Result<Instance> {
    let PartitionLbParams { k, part_size, p, budget } = params;
    if k == 0 || part_size == 0 {
        return Err(ProbeError::Precondition("partition family needs k >= 1 and part_size >= 1".into()));
    }
    let n = k * part_size;
    let labels = (0..n).map(|e| e / part_size).collect();
    Instance::new(
        GroundSet::uniform(n, p)?,
        Objective::PartitionRank(PartitionRank::unit(labels)?),
        Constraint::Cardinality(CardinalityConstraint::new(n, budget)),
        Metadata::new("partition")
            .param("k", k)
            .param("part_size", part_size)
            .param("p", p)
            .param("budget", budget),
    )
}

/// Constraint used with the k-ary tree XOS family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeVariant {
    /// Probed edges must all touch one root-leaf path.
    PathWitness,
    /// At most `k²` probes.
    Cardinality,
}

/// XOS objective `max_l |P_l ∩ S|` over the root-leaf paths of a k-ary tree.
pub fn gen_xos_tree_lb(k: usize, depth: usize, variant: TreeVariant) -> Result<Instance> {
    let tree = KaryTree::new(k, depth)?;
    let n = tree.edge_count();
    let rows = (0..tree.leaf_count())
        .map(|leaf| {
            let path = tree.leaf_path(leaf);
            (0..n).map(|e| if path.contains(e) { 1.0 } else { 0.0 }).collect()
        })
        .collect();
    let constraint = match variant {
        TreeVariant::PathWitness => Constraint::PathWitness(PathWitnessConstraint::new(k, depth)?),
        TreeVariant::Cardinality => Constraint::Cardinality(CardinalityConstraint::new(n, k * k)),
    };
    Instance::new(
        GroundSet::uniform(n, 1.0 / k as f64)?,
        Objective::Xos(XosFunction::new(n, rows)?),
        constraint,
        Metadata::new("xos_tree")
            .param("k", k)
            .param("depth", depth)
            .param("variant", serde_json::to_value(variant).expect("variant serializes")),
    )
}

/// Parameters of the all-types family: `k` types with `copies` items each.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AllTypesParams {
    pub k: usize,
    pub copies: usize,
    pub p: f64,
    pub budget: usize,
}

impl AllTypesParams {
    /// `k` copies per type, `p = 1/2`, budget `4k`.
    pub fn paper(k: usize) -> Self {
        AllTypesParams {
            k,
            copies: k,
            p: 0.5,
            budget: 4 * k,
        }
    }
}

pub fn gen_alltypes_lb(params: AllTypesParams) -> Result<Instance> {
    let AllTypesParams { k, copies, p, budget } = params;
    if k == 0 || copies == 0 {
        return Err(ProbeError::Precondition("all-types family needs k >= 1 and copies >= 1".into()));
    }
    let n = k * copies;
    let types = (0..n).map(|e| e / copies).collect();
    Instance::new(
        GroundSet::uniform(n, p)?,
        Objective::AllTypes(AllTypesFunction::new(types, k)?),
        Constraint::Cardinality(CardinalityConstraint::new(n, budget)),
        Metadata::new("all_types")
            .param("k", k)
            .param("copies", copies)
            .param("p", p)
            .param("budget", budget),
    )
}

/// Objective family for [`gen_random`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomFamily {
    Coverage,
    Cut,
    Xos,
}

/// Constraint family for random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    Cardinality,
    PartitionMatroid,
    PathWitness,
    PrefixDag,
    BudgetPath,
}

/// Knobs for [`gen_random`]. Unset fields are drawn from the seed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomParams {
    /// Number of linear functions for the XOS family.
    pub width: usize,
    pub constraint: ConstraintKind,
    /// Cardinality budget; drawn from `1..=n` when absent.
    pub budget: Option<usize>,
    pub min_prob: f64,
    pub max_prob: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            width: 3,
            constraint: ConstraintKind::Cardinality,
            budget: None,
            min_prob: 0.1,
            max_prob: 0.9,
        }
    }
}

/// Seeded random instance of the given family.
///
/// The path-witness constraint fixes the ground set to a binary tree, so
/// `n` must then be 2, 6 or 14.
pub fn gen_random(family: RandomFamily, n: usize, seed: u64, params: RandomParams) -> Result<Instance> {
    if n == 0 || n > crate::constraints::EXHAUSTIVE_LIMIT {
        return Err(ProbeError::Precondition(format!("random instances need 1 <= n <= 14, got {n}")));
    }
    if !(0.0..=params.max_prob).contains(&params.min_prob) || params.max_prob > 1.0 {
        return Err(ProbeError::Precondition("probability range must satisfy 0 <= min <= max <= 1".into()));
    }
    let mut rng = rng::seeded(seed);
    let probs = (0..n)
        .map(|_| {
            if params.max_prob > params.min_prob {
                rng.gen_range(params.min_prob..=params.max_prob)
            } else {
                params.min_prob
            }
        })
        .collect();
    let objective = match family {
        RandomFamily::Coverage => random_coverage(n, &mut rng)?,
        RandomFamily::Cut => random_cut(n, &mut rng)?,
        RandomFamily::Xos => random_xos(n, params.width.max(1), &mut rng)?,
    };
    let constraint = match (params.constraint, params.budget) {
        (ConstraintKind::Cardinality, Some(b)) => Constraint::Cardinality(CardinalityConstraint::new(n, b)),
        (kind, _) => random_constraint(kind, n, &mut rng)?,
    };
    let meta = Metadata::new(match family {
        RandomFamily::Coverage => "random_coverage",
        RandomFamily::Cut => "random_cut",
        RandomFamily::Xos => "random_xos",
    })
    .param("n", n)
    .param("width", params.width)
    .param("constraint", serde_json::to_value(params.constraint).expect("kind serializes"))
    .with_seed(seed);
    Instance::new(GroundSet::new(probs)?, objective, constraint, meta)
}

fn random_coverage(n: usize, rng: &mut ProbeRng) -> Result<Objective> {
    let items = 2 * n;
    let weights: Vec<f64> = (0..items).map(|_| rng.gen_range(0.1..=1.0)).collect();
    let covers = (0..n)
        .map(|_| {
            let mut c: Vec<usize> = (0..items).filter(|_| rng.gen_bool(0.25)).collect();
            if c.is_empty() {
                c.push(rng.gen_range(0..items));
            }
            c
        })
        .collect();
    Ok(Objective::Coverage(CoverageFunction::new(weights, covers)?))
}

fn random_cut(n: usize, rng: &mut ProbeRng) -> Result<Objective> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v, rng.gen_range(0.1..=1.0)));
            }
        }
    }
    Ok(Objective::Cut(CutFunction::new(n, edges)?))
}

fn random_xos(n: usize, width: usize, rng: &mut ProbeRng) -> Result<Objective> {
    let rows = (0..width)
        .map(|_| {
            (0..n)
                .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..1.0) })
                .collect()
        })
        .collect();
    Ok(Objective::Xos(XosFunction::new(n, rows)?))
}

/// Random constraint of the given kind on `n` elements.
pub fn random_constraint(kind: ConstraintKind, n: usize, rng: &mut ProbeRng) -> Result<Constraint> {
    Ok(match kind {
        ConstraintKind::Cardinality => Constraint::Cardinality(CardinalityConstraint::new(n, rng.gen_range(0..=n))),
        ConstraintKind::PartitionMatroid => {
            let parts = rng.gen_range(1..=n.clamp(1, 3));
            let labels = (0..n).map(|_| rng.gen_range(0..parts)).collect();
            let caps = (0..parts).map(|_| rng.gen_range(1..=2)).collect();
            Constraint::PartitionMatroid(PartitionMatroidConstraint::new(labels, caps)?)
        }
        ConstraintKind::PathWitness => {
            let depth = match n {
                2 => 1,
                6 => 2,
                14 => 3,
                _ => {
                    return Err(ProbeError::Precondition(format!(
                        "path-witness constraint on a binary tree needs n in {{2, 6, 14}}, got {n}"
                    )))
                }
            };
            Constraint::PathWitness(PathWitnessConstraint::new(2, depth)?)
        }
        ConstraintKind::PrefixDag => {
            let count = rng.gen_range(1..=4);
            let mut elems: Vec<usize> = (0..n).collect();
            let sequences = (0..count)
                .map(|_| {
                    elems.shuffle(rng);
                    let len = rng.gen_range(0..=n.min(5));
                    elems[..len].to_vec()
                })
                .collect();
            Constraint::PrefixDag(PrefixDagConstraint::new(n, sequences)?)
        }
        ConstraintKind::BudgetPath => {
            let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect();
            let budget = rng.gen_range(0.5..2.0);
            Constraint::BudgetPath(BudgetPathConstraint::from_points((0.5, 0.5), &points, budget)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::ProbeConstraint;
    use crate::functions::{verify_monotone, verify_submodular, SetFunction};

    #[test]
    fn partition_family_shape() {
        let inst = gen_partition_lb(PartitionLbParams {
            k: 2,
            part_size: 4,
            p: 0.5,
            budget: 4,
        })
        .unwrap();
        assert_eq!(inst.n(), 8);
        assert_eq!(inst.objective().eval(inst.ground().full()), 2.0);
        let paper = PartitionLbParams::paper(3);
        assert_eq!((paper.part_size, paper.budget), (9, 9));
    }

    #[test]
    fn xos_tree_family_shape() {
        let inst = gen_xos_tree_lb(2, 2, TreeVariant::PathWitness).unwrap();
        assert_eq!(inst.n(), 6);
        match inst.objective() {
            Objective::Xos(f) => assert_eq!(f.width(), 4),
            _ => panic!("expected xos"),
        }
        let card = gen_xos_tree_lb(2, 2, TreeVariant::Cardinality).unwrap();
        assert!(matches!(card.constraint(), Constraint::Cardinality(c) if c.budget() == 4));
    }

    #[test]
    fn all_types_paper_preset() {
        let p = AllTypesParams::paper(3);
        assert_eq!((p.copies, p.budget, p.p), (3, 12, 0.5));
        let inst = gen_alltypes_lb(p).unwrap();
        assert_eq!(inst.n(), 9);
    }

    #[test]
    fn random_coverage_is_monotone_submodular() {
        for seed in 0..5 {
            let inst = gen_random(RandomFamily::Coverage, 6, seed, RandomParams::default()).unwrap();
            assert!(verify_monotone(inst.objective()).unwrap().holds());
            assert!(verify_submodular(inst.objective()).unwrap().holds());
        }
    }

    #[test]
    fn random_cut_is_submodular_but_not_monotone() {
        for seed in 0..5 {
            let inst = gen_random(RandomFamily::Cut, 6, seed, RandomParams::default()).unwrap();
            assert!(verify_submodular(inst.objective()).unwrap().holds());
            let has_edge = matches!(inst.objective(), Objective::Cut(c) if !c.edges().is_empty());
            assert_eq!(verify_monotone(inst.objective()).unwrap().holds(), !has_edge);
        }
    }

    #[test]
    fn random_xos_is_monotone() {
        let params = RandomParams {
            width: 4,
            ..Default::default()
        };
        let inst = gen_random(RandomFamily::Xos, 6, 11, params).unwrap();
        assert!(verify_monotone(inst.objective()).unwrap().holds());
    }

    #[test]
    fn generators_are_deterministic() {
        for kind in [
            ConstraintKind::Cardinality,
            ConstraintKind::PartitionMatroid,
            ConstraintKind::PathWitness,
            ConstraintKind::PrefixDag,
            ConstraintKind::BudgetPath,
        ] {
            let params = RandomParams {
                constraint: kind,
                ..Default::default()
            };
            let a = gen_random(RandomFamily::Xos, 6, 5, params).unwrap();
            let b = gen_random(RandomFamily::Xos, 6, 5, params).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.constraint().ground_size(), 6);
        }
        assert!(gen_random(RandomFamily::Cut, 15, 0, RandomParams::default()).is_err());
    }
}
