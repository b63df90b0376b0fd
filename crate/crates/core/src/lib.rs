//! Stochastic probing: objectives over randomly active elements, prefix-closed
//! probing constraints, exact evaluation and optimization of adaptive and
//! non-adaptive strategies, and numeric checks of the adaptivity-gap bounds.
//!
//! Everything is exact and sized for small ground sets (subsets are `u32`
//! bit masks). Randomness is always seeded.
//!
//! ```
//! use stochprobe::prelude::*;
//!
//! let inst = gen_random(RandomFamily::Coverage, 6, 1, RandomParams::default()).unwrap();
//! let report = gap_report(&inst).unwrap();
//! assert!(report.adap_opt + 1e-9 >= report.nonadap_opt);
//! ```

pub mod adaptive;
pub mod analysis;
pub mod constraints;
pub mod error;
pub mod functions;
pub mod ground;
pub mod instances;
pub mod nonadaptive;
pub mod rng;

pub use error::{ProbeError, Result};
pub use ground::{GroundSet, Subset};

/// The commonly used types and entry points.
pub mod prelude {
    pub use crate::adaptive::{adap_online_value, adap_value, alg_value, opt_adaptive, random_tree, StrategyTree};
    pub use crate::analysis::{gap_report, run_suite, Suite};
    pub use crate::constraints::{Constraint, ProbeConstraint};
    pub use crate::error::{ProbeError, Result};
    pub use crate::functions::{Objective, SetFunction};
    pub use crate::ground::{GroundSet, Subset};
    pub use crate::instances::{
        gen_alltypes_lb, gen_partition_lb, gen_random, gen_xos_tree_lb, AllTypesParams, Instance, PartitionLbParams,
        RandomFamily, RandomParams, TreeVariant,
    };
    pub use crate::nonadaptive::{
        greedy_nonadaptive, natural_nonadaptive, opt_nonadaptive, plan_value, xos_algorithm1, GapReport, ProbePlan,
    };
}
