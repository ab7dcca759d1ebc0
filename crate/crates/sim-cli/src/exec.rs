//! Run execution: single-law runs and the four-law comparison.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use flock_core::ControlLawKind;
use flock_diagnostics::MonitorConfig;
use flock_dynamics::{run, RunOutcome, ScenarioError, ScenarioSpec};

use crate::config::{LawChoice, RunConfig};
use crate::output;

/// A recorded crossing of the pairwise distance window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationReport {
    /// Simulation time of the crossing, when known.
    pub time: Option<f64>,
    /// Offending agent pair `[i, j]`, when known.
    pub pair: Option<[usize; 2]>,
    /// `"lower"` or `"upper"`.
    pub side: String,
    /// The offending squared distance.
    pub sq_dist: f64,
}

/// Outcome digest of one run, as written to `<law>_summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    /// Law label (`proposed`, `model1`, `model2`, `model3`).
    pub law: String,
    /// Whether the full horizon was simulated.
    pub completed: bool,
    /// First bound crossing, if any was recorded.
    pub violation: Option<ViolationReport>,
    /// First time the velocity dispersion fell below the convergence
    /// threshold (1e-3), if it did.
    pub convergence_time: Option<f64>,
    /// Average pairwise distance in the final record.
    pub final_avg_distance: f64,
    /// Smallest pairwise squared distance over the whole run.
    pub min_sq_dist: f64,
    /// Largest pairwise squared distance over the whole run.
    pub max_sq_dist: f64,
}

/// A failure while executing or writing out a validated run.
#[derive(Debug, thiserror::Error)]
pub enum ExecError {
    /// A file could not be written.
    #[error("cannot write {path}: {source}")]
    Io {
        /// Offending path.
        path: PathBuf,
        /// Underlying I/O error.
        source: std::io::Error,
    },
    /// The scenario failed validation (normally caught at config time).
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ExecError + '_ {
    move |source| ExecError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Digests one finished run into its summary.
pub fn summarize(label: &str, outcome: &RunOutcome) -> RunSummary {
    let threshold = MonitorConfig::default().dispersion_threshold;
    let mut convergence_time = None;
    let mut final_avg_distance = f64::NAN;
    let mut min_sq_dist = f64::INFINITY;
    let mut max_sq_dist = f64::NEG_INFINITY;
    for r in outcome.trajectory.records() {
        if convergence_time.is_none() && r.dispersion < threshold {
            convergence_time = Some(r.time);
        }
        final_avg_distance = r.avg_distance;
        min_sq_dist = min_sq_dist.min(r.min_sq_dist);
        max_sq_dist = max_sq_dist.max(r.max_sq_dist);
    }
    RunSummary {
        law: label.to_string(),
        completed: outcome.completed,
        violation: outcome.violation.map(|v| ViolationReport {
            time: v.time,
            pair: v.pair.map(|(i, j)| [i, j]),
            side: v.side.to_string(),
            sq_dist: v.sq_dist,
        }),
        convergence_time,
        final_avg_distance,
        min_sq_dist,
        max_sq_dist,
    }
}

fn write_run_files(
    dir: &Path,
    label: &str,
    outcome: &RunOutcome,
    summary: &RunSummary,
) -> Result<(), ExecError> {
    let trajectory = dir.join(format!("{label}_trajectory.csv"));
    output::write_trajectory_csv(&trajectory, &outcome.trajectory).map_err(io_err(&trajectory))?;
    let diagnostics = dir.join(format!("{label}_diagnostics.csv"));
    output::write_diagnostics_csv(&diagnostics, &outcome.trajectory)
        .map_err(io_err(&diagnostics))?;
    let summary_path = dir.join(format!("{label}_summary.json"));
    output::write_summary_json(&summary_path, summary).map_err(io_err(&summary_path))?;
    Ok(())
}

/// Runs the four laws on the same scenario, concurrently, returning the
/// outcomes in law order (proposed, model1, model2, model3).
fn run_all(base: &ScenarioSpec) -> Result<Vec<RunOutcome>, ScenarioError> {
    let specs: Vec<ScenarioSpec> = ControlLawKind::ALL
        .iter()
        .map(|&kind| {
            let mut s = base.clone();
            s.law = kind;
            s
        })
        .collect();
    let mut slots: Vec<Option<Result<RunOutcome, ScenarioError>>> =
        specs.iter().map(|_| None).collect();
    std::thread::scope(|scope| {
        for (spec, slot) in specs.iter().zip(slots.iter_mut()) {
            scope.spawn(move || *slot = Some(run(spec)));
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.expect("every run thread fills its slot"))
        .collect()
}

/// Executes a resolved config and writes its output files.
///
/// Single-law runs emit `<law>_trajectory.csv`, `<law>_diagnostics.csv`,
/// and `<law>_summary.json`. The four-law comparison emits those for each
/// law plus `comparison_avg_distance.csv` and `compare_summary.json`.
/// Returns the summaries in execution order.
///
/// # Errors
///
/// I/O failures and (should config validation have been skipped)
/// scenario errors.
pub fn execute(config: &RunConfig) -> Result<Vec<RunSummary>, ExecError> {
    let dir = &config.output_dir;
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;

    match config.law {
        LawChoice::Single(kind) => {
            let mut spec = config.spec.clone();
            spec.law = kind;
            let outcome = run(&spec)?;
            let summary = summarize(kind.label(), &outcome);
            write_run_files(dir, kind.label(), &outcome, &summary)?;
            Ok(vec![summary])
        }
        LawChoice::All => {
            let outcomes = run_all(&config.spec)?;
            let summaries: Vec<RunSummary> = ControlLawKind::ALL
                .iter()
                .zip(&outcomes)
                .map(|(kind, outcome)| summarize(kind.label(), outcome))
                .collect();
            for ((kind, outcome), summary) in
                ControlLawKind::ALL.iter().zip(&outcomes).zip(&summaries)
            {
                write_run_files(dir, kind.label(), outcome, summary)?;
            }

            let series: [Vec<f64>; 4] = std::array::from_fn(|i| {
                outcomes[i].trajectory.records().map(|r| r.avg_distance).collect()
            });
            let comparison = dir.join("comparison_avg_distance.csv");
            output::write_comparison_csv(
                &comparison,
                config.spec.integrator.dt,
                &series,
                config.spec.params.d0.sqrt(),
                config.spec.params.d1.sqrt(),
            )
            .map_err(io_err(&comparison))?;

            let compare_summary = dir.join("compare_summary.json");
            output::write_compare_summary_json(&compare_summary, &summaries)
                .map_err(io_err(&compare_summary))?;
            Ok(summaries)
        }
    }
}
