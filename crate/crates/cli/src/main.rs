mod exit;
mod gap;
mod generate;
mod verify;

use clap::{Parser, Subcommand};

/// Stochastic probing: instance generation, adaptivity-gap reports and
/// property checks.
#[derive(Debug, Parser)]
#[command(name = "stochprobe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an instance file for one of the built-in families.
    Generate(generate::GenerateArgs),
    /// Solve instances exactly and report adaptive vs non-adaptive values.
    Gap(gap::GapArgs),
    /// Run seeded property suites.
    Verify(verify::VerifyArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(args) => generate::run(args),
        Command::Gap(args) => gap::run(args),
        Command::Verify(args) => verify::run(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(exit::code_of(&err));
    }
}
