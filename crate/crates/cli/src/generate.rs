use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use stochprobe::instances::{
    gen_alltypes_lb, gen_partition_lb, gen_random, gen_xos_tree_lb, AllTypesParams, ConstraintKind, Instance,
    PartitionLbParams, RandomFamily, RandomParams, TreeVariant,
};

use crate::exit::{Failure, USAGE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Family {
    Partition,
    XosTree,
    AllTypes,
    Coverage,
    Cut,
    Xos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Variant {
    PathWitness,
    Cardinality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Kind {
    Cardinality,
    PartitionMatroid,
    PathWitness,
    PrefixDag,
    BudgetPath,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Number of parts (partition), arity (xos_tree) or types (all_types).
    #[arg(long)]
    k: Option<usize>,
    /// Elements per part (partition); defaults to k².
    #[arg(long)]
    part_size: Option<usize>,
    /// Copies per type (all_types); defaults to k.
    #[arg(long)]
    copies: Option<usize>,
    /// Activation probability for the structured families.
    #[arg(long)]
    p: Option<f64>,
    /// Probe budget (cardinality constraint).
    #[arg(long)]
    budget: Option<usize>,
    /// Tree depth (xos_tree); defaults to k.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, value_enum, default_value = "path_witness")]
    variant: Variant,
    /// Ground-set size for random families.
    #[arg(long)]
    n: Option<usize>,
    /// Number of linear functions for the random xos family.
    #[arg(long, default_value_t = 3)]
    width: usize,
    /// Constraint for random families.
    #[arg(long, value_enum, default_value = "cardinality")]
    constraint: Kind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn need(value: Option<usize>, flag: &str, family: Family) -> Result<usize> {
    value.ok_or_else(|| Failure::new(USAGE, format!("--{flag} is required for family {family:?}")).into())
}

pub fn build(args: &GenerateArgs) -> Result<Instance> {
    let inst = match args.family {
        Family::Partition => {
            let k = need(args.k, "k", args.family)?;
            let preset = PartitionLbParams::paper(k);
            gen_partition_lb(PartitionLbParams {
                k,
                part_size: args.part_size.unwrap_or(preset.part_size),
                p: args.p.unwrap_or(preset.p),
                budget: args.budget.unwrap_or(preset.budget),
            })
        }
        Family::XosTree => {
            let k = need(args.k, "k", args.family)?;
            let variant = match args.variant {
                Variant::PathWitness => TreeVariant::PathWitness,
                Variant::Cardinality => TreeVariant::Cardinality,
            };
            gen_xos_tree_lb(k, args.depth.unwrap_or(k), variant)
        }
        Family::AllTypes => {
            let k = need(args.k, "k", args.family)?;
            let preset = AllTypesParams::paper(k);
            gen_alltypes_lb(AllTypesParams {
                k,
                copies: args.copies.unwrap_or(preset.copies),
                p: args.p.unwrap_or(preset.p),
                budget: args.budget.unwrap_or(preset.budget),
            })
        }
        Family::Coverage | Family::Cut | Family::Xos => {
            let n = need(args.n, "n", args.family)?;
            let family = match args.family {
                Family::Coverage => RandomFamily::Coverage,
                Family::Cut => RandomFamily::Cut,
                _ => RandomFamily::Xos,
            };
            let constraint = match args.constraint {
                Kind::Cardinality => ConstraintKind::Cardinality,
                Kind::PartitionMatroid => ConstraintKind::PartitionMatroid,
                Kind::PathWitness => ConstraintKind::PathWitness,
                Kind::PrefixDag => ConstraintKind::PrefixDag,
                Kind::BudgetPath => ConstraintKind::BudgetPath,
            };
            gen_random(
                family,
                n,
                args.seed,
                RandomParams {
                    width: args.width,
                    constraint,
                    budget: args.budget,
                    ..Default::default()
                },
            )
        }
    };
    inst.context("could not build the instance")
}

pub fn run(args: &GenerateArgs) -> Result<()> {
    let text = build(args)?.to_json();
    match &args.out {
        Some(path) => std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}
