mod commands;
mod config;
mod error;
mod output;
mod refs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::commands::{default_budget, Ctx, Outcome};
use crate::config::Config;
use crate::error::{input, CliError};
use crate::output::{write_report, Meta};
use crate::refs::Resolver;

/// Batch runner for weak-containment distances, tower convergence,
/// sofic-entropy grids and sofic validation.
#[derive(Parser)]
#[command(name = "sofic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML experiment config (schema version 1).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for the CSV and JSON reports.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Candidate budget for exhaustive searches and exact counts.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// List actions with their generator fix ratios.
    Catalog,
    /// Inner, outer or symmetrized distance between two actions.
    Dist,
    /// Distance matrix between the levels of a tower.
    TowerConverge,
    /// Sofic entropy grid over partition, word and δ ladders.
    Entropy,
    /// Fix-ratio trends of a candidate sofic approximation.
    ValidateSofic,
    /// Small-entropy partition of a tower level.
    Genprof,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::Dist => "dist",
            Command::TowerConverge => "tower-converge",
            Command::Entropy => "entropy",
            Command::ValidateSofic => "validate-sofic",
            Command::Genprof => "genprof",
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| input(format!("thread pool: {e}")))?;
    }
    let path = cli.config.as_ref().ok_or_else(|| input("--config is required"))?;
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    let cfg = Config::parse(&text)?;
    let refs = Resolver::new(path);
    let ctx = Ctx {
        cfg: &cfg,
        refs: &refs,
        seed: cli.seed.unwrap_or(cfg.seed),
        budget: default_budget(&cfg, cli.budget),
    };
    let outcome: Outcome = match cli.command {
        Command::Catalog => commands::catalog(&ctx)?,
        Command::Dist => commands::dist(&ctx)?,
        Command::TowerConverge => commands::tower(&ctx)?,
        Command::Entropy => commands::entropy(&ctx)?,
        Command::ValidateSofic => commands::validate(&ctx)?,
        Command::Genprof => commands::genprof(&ctx)?,
    };
    let meta = Meta {
        tool: "sofic",
        version: output::VERSION,
        command: cli.command.name(),
        config_sha256: hex::encode(Sha256::digest(text.as_bytes())),
        seed: ctx.seed,
        budget: ctx.budget,
        exact: outcome.exact,
    };
    let (csv, json) = write_report(&cli.out, cli.command.name(), &meta, &outcome.table, &outcome.report)?;
    for line in &outcome.summary {
        println!("{line}");
    }
    println!("wrote {} and {}", csv.display(), json.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sofic: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
