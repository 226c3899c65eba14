//! `irrk3`: a workbench for upper bounds on the polarized degree of
//! irrationality of K3 surfaces, with a finite-field oracle that measures
//! fiber degrees of split-bundle projections on toy inputs.
//!
//! Every subcommand prints one JSON envelope to stdout (except `table`
//! with `--format csv|md`, which prints the document itself) and exits
//! with 0 on success, 2 on a domain error, and 3 when a verification run
//! fails or mismatches.

mod cache;
mod commands;
mod config;
mod envelope;
mod formats;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{CommandRun, VerifyArgs};
use config::OutputFormat;
use envelope::{Failure, ResultEnvelope};

#[derive(Parser)]
#[command(
    name = "irrk3",
    version,
    about = "Degree-of-irrationality bounds for polarized K3 surfaces",
    propagate_version = true
)]
struct Cli {
    /// Flat key=value config file (keys: seed, field_size, output_format,
    /// cache_path, genus_min, genus_max); flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Cache directory for verification payloads (overrides cache_path).
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form and certified-optimal degree bounds for one genus
    Bound {
        /// Genus of the polarized surface (at least 2)
        genus: u64,
    },
    /// Bound table: the reference genera, or an explicit range stepping by 2
    Table {
        /// First genus of the range
        #[arg(long)]
        from: Option<u64>,
        /// Last genus of the range (inclusive)
        #[arg(long)]
        to: Option<u64>,
        /// Output document format
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Run the multiplicity-plan optimizer for one genus
    Optimize {
        /// Genus of the polarized surface (at least 2)
        genus: u64,
        /// Search the full plan table instead of the greedy packer
        #[arg(long)]
        exhaustive: bool,
    },
    /// Dimension case study of the low-degree projection loci
    Bn {
        /// Genus of the case study (5 or 6)
        #[arg(long)]
        genus: u64,
    },
    /// Recorded higher-dimensional degree estimates, revalidated
    Catalog,
    /// Measure fiber degrees of a split-bundle projection over GF(q)
    Verify {
        /// Bundle degrees as `a,b` for O(a) + O(b) on the plane
        #[arg(long, value_parser = parse_bundle_arg, value_name = "A,B")]
        bundle: (u32, u32),
        /// Base-point file: one `x y z mult` line per point
        #[arg(long, value_name = "FILE")]
        base_points: Option<PathBuf>,
        /// Prime field size (default: config field_size)
        #[arg(long)]
        q: Option<u64>,
        /// Run seed (default: config seed)
        #[arg(long)]
        seed: Option<u64>,
        /// Random targets measured per attempt (minimum 5)
        #[arg(long)]
        targets: Option<u32>,
        /// Section-triple file; when absent the triple is sampled
        #[arg(long, value_name = "FILE")]
        sections: Option<PathBuf>,
    },
}

fn parse_bundle_arg(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two degrees as `a,b`, got {s:?}"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("bundle degree {t:?} is not a positive integer"))
    };
    Ok((parse(a)?, parse(b)?))
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Bound { .. } => "bound",
        Cmd::Table { .. } => "table",
        Cmd::Optimize { .. } => "optimize",
        Cmd::Bn { .. } => "bn",
        Cmd::Catalog => "catalog",
        Cmd::Verify { .. } => "verify",
    }
}

fn dispatch(cmd: Cmd, cfg: &config::RunConfig) -> CommandRun {
    match cmd {
        Cmd::Bound { genus } => commands::run_bound(genus),
        Cmd::Table { from, to, format } => commands::run_table(from, to, format, cfg),
        Cmd::Optimize { genus, exhaustive } => commands::run_optimize(genus, exhaustive),
        Cmd::Bn { genus } => commands::run_bn(genus),
        Cmd::Catalog => commands::run_catalog(),
        Cmd::Verify {
            bundle,
            base_points,
            q,
            seed,
            targets,
            sections,
        } => {
            let args = VerifyArgs {
                bundle,
                base_points,
                q,
                seed,
                targets,
                sections,
            };
            commands::run_verify(&args, cfg, cfg.cache_path.as_deref())
        }
    }
}

fn emit(run: CommandRun) -> i32 {
    match run.outcome {
        Ok(success) => {
            match &success.rendered {
                Some(text) => print!("{text}"),
                None => print!(
                    "{}",
                    ResultEnvelope::success(run.name, run.inputs, success.payload, success.provenance)
                        .render()
                ),
            }
            success.exit_code
        }
        Err(failure) => {
            print!(
                "{}",
                ResultEnvelope::failure(run.name, run.inputs, failure.report()).render()
            );
            failure.exit_code
        }
    }
}

fn emit_failure(name: &'static str, inputs: serde_json::Value, failure: Failure) -> i32 {
    emit(CommandRun {
        name,
        inputs,
        outcome: Err(failure),
    })
}

fn real_main() -> i32 {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let config_echo = json!({
        "config_file": cli.config.as_ref().map(|p| p.display().to_string()),
    });
    let mut cfg = match config::load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(f) => return emit_failure(name, config_echo, f),
    };
    if let Some(dir) = cli.cache {
        cfg.cache_path = Some(dir);
    }
    if let Err(msg) = cfg.validate() {
        return emit_failure(name, config_echo, Failure::config(msg));
    }
    emit(dispatch(cli.command, &cfg))
}

fn main() {
    std::process::exit(real_main());
}
