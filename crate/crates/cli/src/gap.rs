use std::fs::OpenOptions;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use stochprobe::analysis::gap_report;
use stochprobe::instances::{Instance, SCHEMA_VERSION};
use stochprobe::nonadaptive::GapReport;

use crate::exit::{code_of, Failure, USAGE, VIOLATION};

#[derive(Debug, Args)]
pub struct GapArgs {
    /// Instance files.
    #[arg(required_unless_present = "batch")]
    instances: Vec<PathBuf>,
    /// Evaluate every `*.json` file in this directory, in filename order.
    #[arg(long, conflicts_with = "instances")]
    batch: Option<PathBuf>,
    /// Exit 1 when a class-conditional gap bound is violated.
    #[arg(long)]
    assert_theorems: bool,
    /// Append one CSV row per instance to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A gap report for one instance file, with its solve time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub instance: String,
    pub wall_ms: f64,
    pub report: GapReport,
}

/// The `gap` command's JSON output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub version: u32,
    pub tool_version: String,
    pub total_wall_ms: f64,
    pub entries: Vec<ReportEntry>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    instance: &'a str,
    digest: &'a str,
    family: &'a str,
    n: usize,
    class: String,
    constraint: &'a str,
    adap_opt: f64,
    nonadap_opt: f64,
    natural: f64,
    greedy: Option<f64>,
    xos_alg1: Option<f64>,
    gap: f64,
    natural_ratio: f64,
    seed: Option<u64>,
    wall_ms: f64,
}

fn load(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn solve(path: &Path) -> Result<ReportEntry> {
    let inst = load(path)?;
    let start = Instant::now();
    let report = gap_report(&inst).with_context(|| format!("solving {}", path.display()))?;
    Ok(ReportEntry {
        instance: path.display().to_string(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        report,
    })
}

fn batch_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::new(USAGE, format!("no .json instances in {}", dir.display())).into());
    }
    Ok(files)
}

fn append_csv(path: &Path, entries: &[ReportEntry]) -> Result<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    for e in entries {
        let r = &e.report;
        w.serialize(CsvRow {
            instance: &e.instance,
            digest: &r.digest,
            family: &r.family,
            n: r.n,
            class: serde_json::to_value(r.class)?.as_str().unwrap_or_default().to_string(),
            constraint: &r.constraint,
            adap_opt: r.adap_opt,
            nonadap_opt: r.nonadap_opt,
            natural: r.natural_nonadaptive,
            greedy: r.greedy,
            xos_alg1: r.xos_alg1,
            gap: r.gap,
            natural_ratio: r.natural_ratio,
            seed: r.seed,
            wall_ms: e.wall_ms,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(args: &GapArgs) -> Result<()> {
    let start = Instant::now();
    let files = match &args.batch {
        Some(dir) => batch_files(dir)?,
        None => args.instances.clone(),
    };
    let results: Vec<Result<ReportEntry>> = files.par_iter().map(|p| solve(p)).collect();
    let mut entries = Vec::with_capacity(results.len());
    let mut first_error = None;
    for r in results {
        match r {
            Ok(e) => entries.push(e),
            Err(e) => {
                eprintln!("error: {e:#}");
                first_error.get_or_insert(e);
            }
        }
    }
    if let Some(e) = first_error {
        let code = code_of(&e);
        return Err(Failure::new(code, format!("{} of {} instances failed", files.len() - entries.len(), files.len())).into());
    }

    let file = ReportFile {
        version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        total_wall_ms: start.elapsed().as_secs_f64() * 1e3,
        entries,
    };
    let text = serde_json::to_string_pretty(&file)?;
    match &args.out {
        Some(path) => std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    if let Some(path) = &args.csv {
        append_csv(path, &file.entries)?;
    }

    if args.assert_theorems {
        let broken: Vec<String> = file
            .entries
            .iter()
            .flat_map(|e| e.report.violations().into_iter().map(move |v| format!("{}: {v}", e.instance)))
            .collect();
        if !broken.is_empty() {
            return Err(Failure::new(VIOLATION, format!("theorem bound violated: {}", broken.join(", "))).into());
        }
    }
    Ok(())
}
