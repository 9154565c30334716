//! `sofic`: builds sofic approximations, converts between the map and graph
//! definitions, and runs rank and finiteness experiments.
//!
//! Exit status: 0 on success, 1 when a checked property fails (a
//! `counterexample.txt` is written to the output directory), 2 on usage or
//! configuration errors.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Context, ConvertArgs, Direction, FinitenessArgs};
use config::{parse_rational, Schedule, Setup};
use output::{CliError, OutDir, Outcome};

#[derive(Parser)]
#[command(name = "sofic", version, about = "Sofic approximation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output directory (created if missing).
    #[arg(long, default_value = "sofic-out")]
    out: PathBuf,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GroupArgs {
    /// Group description (TOML).
    #[arg(long)]
    group: PathBuf,
    /// Field characteristic; overrides `prime` in the group file.
    #[arg(long)]
    prime: Option<u32>,
    /// Default epsilon for schedule entries without one.
    #[arg(long, default_value = "1/4")]
    epsilon: String,
}

#[derive(Subcommand)]
enum Command {
    /// Build one approximation per schedule entry and measure its defects.
    Approximate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        group: GroupArgs,
        /// `quotient:N,..`, `folner:N,..` or `regular:M,..`; entries are `N[@R][:EPS]`.
        #[arg(long)]
        schedule: String,
    },
    /// Convert between maps and labelled graphs.
    Convert {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        schedule: Option<String>,
        /// Chart radius r.
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Target fraction of exceptional vertices.
        #[arg(long, default_value = "1/10")]
        delta: String,
        /// Edge list for graph-to-maps.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Good-set file for graph-to-maps; computed from charts when absent.
        #[arg(long)]
        good: Option<PathBuf>,
    },
    /// Normalized rank of one element along the schedule.
    Rank {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        schedule: String,
        /// Element name from the group file or a sum such as `2+2g`.
        #[arg(long)]
        element: String,
    },
    /// Check `ab = 1 => ba = 1`, with matrix ranks at each level.
    Finiteness {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        schedule: Option<String>,
        #[arg(long)]
        a: Option<String>,
        /// Omit to solve for the inverse of `a` (finite groups only).
        #[arg(long)]
        b: Option<String>,
        /// Number of random units when neither `--a` nor `--b` is given.
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Pseudo-rank axioms on random matrices.
    Axioms {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value_t = 32)]
        size: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Regularity witnesses `x y x = x` on random matrices.
    Regularity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value_t = 64)]
        size: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn schedule(g: &GroupArgs, raw: &str) -> Result<Schedule, CliError> {
    Schedule::parse(raw, parse_rational("--epsilon", &g.epsilon)?)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Approximate {
            common,
            group,
            schedule: raw,
        } => {
            let setup = Setup::load(&group.group)?;
            let sched = schedule(&group, &raw)?;
            let out = OutDir::create(&common.out)?;
            let ctx = Context {
                out: &out,
                seed: common.seed,
            };
            commands::approximate(&ctx, &setup, &raw, &sched)
        }
        Command::Convert {
            common,
            group,
            direction,
            schedule: raw,
            radius,
            delta,
            graph,
            good,
        } => {
            let setup = Setup::load(&group.group)?;
            let sched = raw.as_deref().map(|s| schedule(&group, s)).transpose()?;
            let args = ConvertArgs {
                direction,
                radius,
                delta: parse_rational("--delta", &delta)?,
                epsilon: parse_rational("--epsilon", &group.epsilon)?,
                schedule: raw.as_deref().zip(sched),
                graph: graph.as_deref(),
                good: good.as_deref(),
            };
            let out = OutDir::create(&common.out)?;
            let ctx = Context {
                out: &out,
                seed: common.seed,
            };
            commands::convert(&ctx, &setup, &args)
        }
        Command::Rank {
            common,
            group,
            schedule: raw,
            element,
        } => {
            let setup = Setup::load(&group.group)?;
            let p = setup.prime(group.prime)?;
            let sched = schedule(&group, &raw)?;
            let a = setup.element(&element, p)?;
            let out = OutDir::create(&common.out)?;
            let ctx = Context {
                out: &out,
                seed: common.seed,
            };
            commands::rank(&ctx, &setup, &raw, &sched, &a)
        }
        Command::Finiteness {
            common,
            group,
            schedule: raw,
            a,
            b,
            trials,
        } => {
            let setup = Setup::load(&group.group)?;
            let p = setup.prime(group.prime)?;
            let sched = raw.as_deref().map(|s| schedule(&group, s)).transpose()?;
            let args = FinitenessArgs {
                a: a.as_deref(),
                b: b.as_deref(),
                trials,
                schedule: raw.as_deref().zip(sched),
            };
            let out = OutDir::create(&common.out)?;
            let ctx = Context {
                out: &out,
                seed: common.seed,
            };
            commands::finiteness(&ctx, &setup, p, &args)
        }
        Command::Axioms {
            common,
            prime,
            size,
            trials,
        } => {
            let out = OutDir::create(&common.out)?;
            let ctx = Context {
                out: &out,
                seed: common.seed,
            };
            commands::axioms(&ctx, prime, size, trials)
        }
        Command::Regularity {
            common,
            prime,
            size,
            trials,
        } => {
            let out = OutDir::create(&common.out)?;
            let ctx = Context {
                out: &out,
                seed: common.seed,
            };
            commands::regularity(&ctx, prime, size, trials)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violation(path)) => {
            eprintln!(
                "property violated; counterexample written to {}",
                path.display()
            );
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
