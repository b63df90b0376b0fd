//! Seeded property suites behind the `verify` command.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::inequalities::{
    bfns_check, disjointify_fact_check, stem_inequality, stemmass_check, with_base, DiscreteDist, StemInstance,
};
use super::report::{MONOTONE_SUBMODULAR_FACTOR, SUBMODULAR_FACTOR, THEOREM_EPS};
use crate::adaptive::{adap_value, alg_value, opt_adaptive, random_tree};
use crate::error::{ProbeError, Result};
use crate::functions::{fmax_half_estimate, FmaxTable, Objective, SetFunction};
use crate::ground::Subset;
use crate::instances::{gen_random, ConstraintKind, RandomFamily, RandomParams};
use crate::nonadaptive::opt_nonadaptive;
use crate::rng::{self, ProbeRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Stem,
    Stemmass,
    Feige,
    Bfns,
    Factor3,
    Factor40,
    Fact,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `All` runs them.
    pub const EACH: [Suite; 7] = [
        Suite::Stem,
        Suite::Stemmass,
        Suite::Feige,
        Suite::Bfns,
        Suite::Factor3,
        Suite::Factor40,
        Suite::Fact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Stem => "stem",
            Suite::Stemmass => "stemmass",
            Suite::Feige => "feige",
            Suite::Bfns => "bfns",
            Suite::Factor3 => "factor3",
            Suite::Factor40 => "factor40",
            Suite::Fact => "fact",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ProbeError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| ProbeError::Precondition(format!("unknown suite '{s}'")))
    }
}

/// Result of one suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checked: usize,
    /// First violation, in case order.
    pub failure: Option<String>,
    /// Extra observations such as the worst ratio seen.
    pub note: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Runs `count` seeded cases of `suite` (each suite once for `All`).
pub fn run_suite(suite: Suite, seed: u64, count: usize) -> Result<Vec<SuiteOutcome>> {
    if suite == Suite::All {
        return Suite::EACH.iter().map(|&s| run_one(s, seed, count)).collect();
    }
    Ok(vec![run_one(suite, seed, count)?])
}

fn run_one(suite: Suite, seed: u64, count: usize) -> Result<SuiteOutcome> {
    let cases: Vec<Result<Case>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::split(seed, i as u64);
            match suite {
                Suite::Stem => stem_case(&mut rng),
                Suite::Stemmass => stemmass_case(&mut rng),
                Suite::Feige => feige_case(&mut rng),
                Suite::Bfns => bfns_case(&mut rng),
                Suite::Factor3 => factor3_case(&mut rng),
                Suite::Factor40 => factor40_case(&mut rng),
                Suite::Fact => fact_case(&mut rng),
                Suite::All => unreachable!("expanded by run_suite"),
            }
        })
        .collect();
    let mut failure = None;
    let mut worst: Option<f64> = None;
    for (i, case) in cases.into_iter().enumerate() {
        let case = case?;
        if let Some(r) = case.ratio {
            worst = Some(worst.map_or(r, |w: f64| w.min(r)));
        }
        if failure.is_none() {
            if let Some(msg) = case.failure {
                failure = Some(format!("case {i}: {msg}"));
            }
        }
    }
    let note = match suite {
        Suite::Factor3 => worst.map(|w| format!("worst alg/adap = {w:.6}")),
        Suite::Factor40 => worst.map(|w| format!("worst nonadap_opt/adap_opt = {w:.6}")),
        Suite::Stem => worst.map(|w| format!("smallest lhs/(2 rhs) = {w:.6}")),
        _ => None,
    };
    Ok(SuiteOutcome {
        suite,
        checked: count,
        failure,
        note,
    })
}

struct Case {
    failure: Option<String>,
    ratio: Option<f64>,
}

impl Case {
    fn check(ok: bool, msg: impl FnOnce() -> String) -> Self {
        Case {
            failure: (!ok).then(msg),
            ratio: None,
        }
    }

    fn with_ratio(mut self, r: Option<f64>) -> Self {
        self.ratio = r;
        self
    }
}

fn instance_seed(rng: &mut ProbeRng) -> u64 {
    rng.gen()
}

fn stem_case(rng: &mut ProbeRng) -> Result<Case> {
    let m = rng.gen_range(1..=50);
    // mix scales so both short and long effective stems occur
    let scale = [1.0, 0.3, 0.05][rng.gen_range(0..3)];
    let a: Vec<f64> = (0..m).map(|_| rng.gen::<f64>() * scale).collect();
    let c = stem_inequality(&a)?;
    let ratio = (c.rhs > 0.0).then(|| c.lhs / (2.0 * c.rhs));
    Ok(Case::check(c.holds, || format!("a = {a:?}: lhs {} < rhs {}", c.lhs, c.rhs)).with_ratio(ratio))
}

fn stemmass_case(rng: &mut ProbeRng) -> Result<Case> {
    let m = rng.gen_range(1..=8);
    let probs: Vec<f64> = (0..m).map(|_| rng.gen()).collect();
    let values: Vec<f64> = (0..m)
        .map(|_| if rng.gen_bool(0.5) { rng.gen_range(0..4) as f64 } else { rng.gen::<f64>() * 3.0 })
        .collect();
    let stem = StemInstance::new(probs, values)?;
    let s = stemmass_check(&stem)?;
    Ok(Case::check(s.holds && s.closed_forms_agree(), || format!("{stem:?}: {s:?}")))
}

fn small_submodular(rng: &mut ProbeRng, max_n: usize) -> Result<Objective> {
    let n = rng.gen_range(1..=max_n);
    let family = if rng.gen_bool(0.5) { RandomFamily::Coverage } else { RandomFamily::Cut };
    Ok(gen_random(family, n, instance_seed(rng), RandomParams::default())?.objective().clone())
}

fn feige_case(rng: &mut ProbeRng) -> Result<Case> {
    let f = small_submodular(rng, 8)?;
    let table = FmaxTable::new(&f)?;
    for s in Subset::full(f.ground_size()).subsets() {
        let half = fmax_half_estimate(&f, s)?;
        let top = table.fmax(s);
        if half > top + 1e-9 || half < top / 4.0 - 1e-9 {
            return Ok(Case::check(false, || {
                format!("{} function, S = {s:?}: E[f(R)] = {half}, fmax = {top}", f.type_name())
            }));
        }
    }
    Ok(Case::check(true, String::new))
}

fn bfns_case(rng: &mut ProbeRng) -> Result<Case> {
    let n = rng.gen_range(1..=7);
    let h = gen_random(RandomFamily::Cut, n, instance_seed(rng), RandomParams::default())?
        .objective()
        .clone();
    let base: Subset = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    let cap: f64 = rng.gen();
    let inclusion: Vec<f64> = (0..n)
        .map(|e| if base.contains(e) { 0.0 } else { rng.gen::<f64>() * cap })
        .collect();
    let f = with_base(&h, base);
    let c = bfns_check(&f, &inclusion)?;
    Ok(Case::check(c.holds, || format!("base {base:?}, inclusion {inclusion:?}: {c:?}")))
}

fn factor3_case(rng: &mut ProbeRng) -> Result<Case> {
    let n = rng.gen_range(1..=8);
    let kind = [ConstraintKind::Cardinality, ConstraintKind::PartitionMatroid, ConstraintKind::PrefixDag]
        [rng.gen_range(0..3)];
    let params = RandomParams {
        constraint: kind,
        ..Default::default()
    };
    let inst = gen_random(RandomFamily::Coverage, n, instance_seed(rng), params)?;
    let tree = random_tree(&inst, rng.gen(), rng.gen_range(0..=40));
    let adap = adap_value(&tree, inst.objective(), inst.ground())?;
    let alg = alg_value(&tree, inst.objective(), inst.ground())?;
    let ok = alg >= adap / MONOTONE_SUBMODULAR_FACTOR - THEOREM_EPS;
    let ratio = (adap > 0.0).then(|| alg / adap);
    Ok(Case::check(ok, || format!("instance {}: alg {alg} < adap {adap} / 3", inst.digest())).with_ratio(ratio))
}

fn factor40_case(rng: &mut ProbeRng) -> Result<Case> {
    let n = rng.gen_range(1..=7);
    let inst = gen_random(RandomFamily::Cut, n, instance_seed(rng), RandomParams::default())?;
    let (adap, _) = opt_adaptive(&inst)?;
    let (nonadap, _) = opt_nonadaptive(&inst)?;
    let ok = nonadap >= adap / SUBMODULAR_FACTOR - THEOREM_EPS;
    let ratio = (adap > 0.0).then(|| nonadap / adap);
    Ok(Case::check(ok, || format!("instance {}: nonadap {nonadap} < adap {adap} / 40", inst.digest())).with_ratio(ratio))
}

fn random_dist(rng: &mut ProbeRng) -> Result<DiscreteDist> {
    let k = rng.gen_range(1..=4);
    let values = (0..k).map(|_| rng.gen::<f64>()).collect();
    let raw: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 0.01).collect();
    let total: f64 = raw.iter().sum();
    let mut probs: Vec<f64> = raw.iter().map(|r| r / total).collect();
    let head: f64 = probs[..k - 1].iter().sum();
    probs[k - 1] = (1.0 - head).max(0.0);
    DiscreteDist::new(values, probs)
}

fn fact_case(rng: &mut ProbeRng) -> Result<Case> {
    let (x, y, z) = (random_dist(rng)?, random_dist(rng)?, random_dist(rng)?);
    let c = disjointify_fact_check(&x, &y, &z);
    Ok(Case::check(c.holds, || format!("X {x:?}, Y {y:?}, Z {z:?}: {c:?}")))
}
