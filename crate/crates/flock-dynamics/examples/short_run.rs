//! Minimal library usage: a ten-second leaderless run printing the
//! velocity dispersion over time. Mirrors the README's example.

use flock_core::ControlLawKind;
use flock_dynamics::{run, ScenarioError, ScenarioSpec};

fn main() -> Result<(), ScenarioError> {
    let mut spec = ScenarioSpec::leaderless_three();
    spec.law = ControlLawKind::Proposed;
    spec.integrator.duration = 10.0;
    spec.validate()?;

    let outcome = run(&spec)?;
    assert!(outcome.completed && outcome.violation.is_none());
    for record in outcome.trajectory.records().step_by(100) {
        println!(
            "t = {:5.2}  dispersion = {:.3e}",
            record.time, record.dispersion
        );
    }
    Ok(())
}
