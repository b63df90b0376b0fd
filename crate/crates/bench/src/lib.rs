//! Fixed benchmark instances shared by the criterion benches.

use stochprobe::instances::{
    gen_alltypes_lb, gen_partition_lb, gen_random, gen_xos_tree_lb, AllTypesParams, Instance, PartitionLbParams,
    RandomFamily, RandomParams, TreeVariant,
};

/// Named instances of increasing size, all within the exact solvers' limits.
pub fn fixtures() -> Vec<(&'static str, Instance)> {
    let random = |family, n, budget| {
        gen_random(
            family,
            n,
            7,
            RandomParams {
                budget: Some(budget),
                width: 4,
                ..Default::default()
            },
        )
        .expect("fixture parameters are valid")
    };
    vec![
        ("coverage_n8_k3", random(RandomFamily::Coverage, 8, 3)),
        ("coverage_n10_k4", random(RandomFamily::Coverage, 10, 4)),
        ("cut_n8_k3", random(RandomFamily::Cut, 8, 3)),
        ("xos_n10_k3", random(RandomFamily::Xos, 10, 3)),
        ("partition_k2", gen_partition_lb(PartitionLbParams::paper(2)).expect("valid")),
        ("xos_tree_k2_d2", gen_xos_tree_lb(2, 2, TreeVariant::PathWitness).expect("valid")),
        (
            "all_types_k3",
            gen_alltypes_lb(AllTypesParams {
                k: 3,
                copies: 3,
                p: 0.5,
                budget: 5,
            })
            .expect("valid"),
        ),
    ]
}
