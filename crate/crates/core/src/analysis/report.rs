use crate::adaptive::opt_adaptive;
use crate::error::Result;
use crate::functions::{FunctionClass, Objective, SetFunction};
use crate::instances::Instance;
use crate::nonadaptive::{
    greedy_nonadaptive, lambda_practical, natural_nonadaptive, opt_nonadaptive, safe_ratio, xos_algorithm1, GapReport,
    TheoremCheck,
};

/// Slack allowed on the theorem bounds.
pub const THEOREM_EPS: f64 = 1e-9;
/// Gap bound for monotone submodular objectives.
pub const MONOTONE_SUBMODULAR_FACTOR: f64 = 3.0;
/// Gap bound for non-negative submodular objectives.
pub const SUBMODULAR_FACTOR: f64 = 40.0;

/// Solves `inst` every applicable way and records the class-conditional
/// bounds. The XOS algorithm runs with the desk-scale `λ` preset.
pub fn gap_report(inst: &Instance) -> Result<GapReport> {
    let f = inst.objective();
    let g = inst.ground();
    let (adap_opt, tree) = opt_adaptive(inst)?;
    let (nonadap_opt, plan) = opt_nonadaptive(inst)?;
    let natural = natural_nonadaptive(&tree, f, g)?;
    let class = f.class();

    let greedy = if class == FunctionClass::MonotoneSubmodular && inst.constraint().is_matroid() {
        Some(greedy_nonadaptive(inst)?.0)
    } else {
        None
    };
    let xos = match f {
        Objective::Xos(x) => Some(xos_algorithm1(inst, lambda_practical(x.width()))?),
        _ => None,
    };

    let mut theorems = Vec::new();
    let mut bound = |name: &str, factor: f64, value: f64| {
        theorems.push(TheoremCheck {
            name: name.to_string(),
            factor,
            holds: value >= adap_opt / factor - THEOREM_EPS,
        });
    };
    match class {
        FunctionClass::MonotoneSubmodular => {
            bound("monotone_submodular_gap", MONOTONE_SUBMODULAR_FACTOR, nonadap_opt);
            bound("natural_strategy", MONOTONE_SUBMODULAR_FACTOR, natural);
        }
        FunctionClass::Submodular => bound("submodular_gap", SUBMODULAR_FACTOR, nonadap_opt),
        FunctionClass::Xos | FunctionClass::Arbitrary => {}
    }

    Ok(GapReport {
        digest: inst.digest(),
        family: inst.metadata().family.clone(),
        n: inst.n(),
        class,
        constraint: inst.constraint().type_name().to_string(),
        adap_opt,
        nonadap_opt,
        natural_nonadaptive: natural,
        greedy,
        xos_alg1: xos.as_ref().map(|r| r.value),
        xos_oracle_calls: xos.as_ref().map(|r| r.oracle_calls),
        xos_lambda: xos.as_ref().map(|r| r.lambda),
        gap: safe_ratio(adap_opt, nonadap_opt),
        natural_ratio: safe_ratio(natural, adap_opt),
        nonadap_plan: plan,
        theorems,
        seed: inst.metadata().seed,
    })
}
