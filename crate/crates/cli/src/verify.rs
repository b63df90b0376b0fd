use anyhow::Result;
use clap::Args;
use stochprobe::analysis::{run_suite, Suite};

use crate::exit::{Failure, USAGE, VIOLATION};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// stem, stemmass, feige, bfns, factor3, factor40, fact or all.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cases per suite.
    #[arg(long, default_value_t = 100)]
    count: usize,
}

pub fn run(args: &VerifyArgs) -> Result<()> {
    let suite: Suite = args.suite.parse().map_err(|e| Failure::new(USAGE, format!("{e}")))?;
    let outcomes = run_suite(suite, args.seed, args.count)?;
    let mut failed = Vec::new();
    for o in &outcomes {
        let note = o.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
        match &o.failure {
            None => println!("ok    {:<9} {} cases{note}", o.suite.name(), o.checked),
            Some(w) => {
                println!("FAIL  {:<9} {w}", o.suite.name());
                failed.push(o.suite.name());
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(VIOLATION, format!("violations in: {}", failed.join(", "))).into())
    }
}
