//! Command-line entry point.
//!
//! Exit codes: 0 for a clean completion, 2 when the executed law (the
//! bounded law, for `compare`) recorded a distance-bound violation, 64
//! for configuration errors, 74 for I/O failures while writing results.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sim_cli::config::ConfigInputs;
use sim_cli::exec::ExecError;
use sim_cli::{execute, load_config, RunSummary};

const EXIT_CLEAN: u8 = 0;
const EXIT_VIOLATION: u8 = 2;
const EXIT_CONFIG: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(
    name = "sim-cli",
    version,
    about = "Distance-bounded flocking simulator",
    long_about = "Simulates a small flock under a distance-bounded control law or one of \
                  three classic baselines, writing trajectory and diagnostics CSV files \
                  plus a JSON summary per run."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single control law on a scenario.
    Run(RunArgs),
    /// Run all four laws on identical initial conditions and emit a
    /// combined average-distance comparison.
    Compare(CommonArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Control law: proposed, model1 (Vicsek), model2 (Cucker-Smale), or
    /// model3 (Cucker-Dong).
    #[arg(long, default_value = "proposed")]
    law: String,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario preset: leaderless3, leader_follower2, or custom.
    #[arg(long, default_value = "leaderless3")]
    scenario: String,

    /// Optional key=value config file (see README for the key table).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Override a single config key; repeatable, applied in order.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Integration step size in seconds (overrides integrator.dt).
    #[arg(long)]
    dt: Option<f64>,

    /// Simulated horizon in seconds (overrides integrator.duration).
    #[arg(long)]
    duration: Option<f64>,

    /// Output directory (created if absent).
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
}

fn describe(summary: &RunSummary) {
    let status = if summary.completed {
        "completed".to_string()
    } else {
        "halted".to_string()
    };
    let violation = match &summary.violation {
        None => "no bound violation".to_string(),
        Some(v) => {
            let mut s = format!("{} bound violated (sq dist {:.6})", v.side, v.sq_dist);
            if let Some(t) = v.time {
                s.push_str(&format!(" at t={t:.2}"));
            }
            if let Some([i, j]) = v.pair {
                s.push_str(&format!(" by agents ({i}, {j})"));
            }
            s
        }
    };
    let convergence = match summary.convergence_time {
        Some(t) => format!("dispersion first below 1e-3 at t={t:.2}"),
        None => "dispersion never below 1e-3".to_string(),
    };
    println!(
        "{}: {status}; {violation}; {convergence}; final avg distance {:.4} m; \
         sq distance range [{:.4}, {:.4}]",
        summary.law, summary.final_avg_distance, summary.min_sq_dist, summary.max_sq_dist
    );
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here too; let clap print and exit 0
            // for those, everything else is a usage error.
            if e.use_stderr() {
                let _ = e.print();
                return ExitCode::from(EXIT_CONFIG);
            }
            let _ = e.print();
            return ExitCode::from(EXIT_CLEAN);
        }
    };

    let (law, allow_all, common) = match &cli.command {
        Command::Run(args) => (args.law.as_str(), false, &args.common),
        Command::Compare(common) => ("all", true, common),
    };

    let inputs = ConfigInputs {
        scenario: &common.scenario,
        law,
        allow_all,
        config_path: common.config.as_deref(),
        sets: &common.set,
        dt: common.dt,
        duration: common.duration,
        out_dir: &common.out,
    };

    let (config, warnings) = match load_config(&inputs) {
        Ok(loaded) => loaded,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }

    let summaries = match execute(&config) {
        Ok(summaries) => summaries,
        Err(ExecError::Io { path, source }) => {
            eprintln!("i/o error: cannot write {}: {source}", path.display());
            return ExitCode::from(EXIT_IO);
        }
        Err(ExecError::Scenario(e)) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    for summary in &summaries {
        describe(summary);
    }

    // `compare` reports violation through the bounded law (always first);
    // the baselines are expected to cross bounds by design.
    let decisive = &summaries[0];
    if decisive.violation.is_some() {
        ExitCode::from(EXIT_VIOLATION)
    } else {
        ExitCode::from(EXIT_CLEAN)
    }
}
