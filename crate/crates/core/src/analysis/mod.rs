//! Numeric checks of the standalone inequalities, the concentration
//! experiment, the gap report, and the seeded property suites.

mod concentration;
mod inequalities;
mod report;
mod suites;

pub use concentration::{concentration_experiment, ConcentrationReport};
pub use inequalities::{
    bfns_check, disjointify_fact_check, stem_inequality, stem_ratio, stemmass_check, with_base, Comparison,
    DiscreteDist, StemInstance, StemMass, WithBase, CHECK_EPS, STEMMASS_LIMIT,
};
pub use report::{gap_report, MONOTONE_SUBMODULAR_FACTOR, SUBMODULAR_FACTOR, THEOREM_EPS};
pub use suites::{run_suite, Suite, SuiteOutcome};
