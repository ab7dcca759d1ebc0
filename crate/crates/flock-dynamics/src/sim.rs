//! Stepping and whole-run execution with runtime bound enforcement.

use crate::error::ScenarioError;
use crate::integrator::{advance, AgentDerivs};
use crate::leader::leader_input;
use crate::saturation::{clamp_speed, saturate_acceleration};
use crate::scenario::ScenarioSpec;
use crate::vicsek;
use flock_core::{
    baseline_control_input, squared_distance, AgentState, ControlParams, DistanceBoundViolation,
    FlockState, Vec2,
};
use flock_diagnostics::{diagnose, DiagnosticsRecord};

/// Guard band inside `(d0, d1)`: a recorded squared distance closer than
/// this to either bound counts as a violation, keeping the kernels finite
/// under floating-point rounding.
pub const GUARD_BAND: f64 = 1e-9;

/// One advanced step: the next state, the accelerations commanded at the
/// step start, and a bound crossing if one was recorded without halting.
#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    /// State after the step.
    pub next: FlockState,
    /// Per-agent acceleration applied at the step start (for the discrete
    /// law: the effective `Δv/dt` of the step).
    pub controls: Vec<Vec2>,
    /// A crossing recorded under a law that does not halt on it.
    pub violation: Option<DistanceBoundViolation>,
}

/// One recorded instant of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryStep {
    /// Flock state at this instant.
    pub state: FlockState,
    /// Accelerations commanded at this instant (zeros for the terminal
    /// record of a halted run, where no further step was taken).
    pub controls: Vec<Vec2>,
    /// Diagnostics of [`state`](Self::state).
    pub diagnostics: DiagnosticsRecord,
}

/// Recorded run: one entry per step boundary, time-stamped `i · dt`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    /// Recorded instants in time order.
    pub steps: Vec<TrajectoryStep>,
}

impl Trajectory {
    /// Number of recorded instants.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// True when nothing was recorded.
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The diagnostics series in time order.
    pub fn records(&self) -> impl Iterator<Item = &DiagnosticsRecord> + '_ {
        self.steps.iter().map(|s| &s.diagnostics)
    }

    /// The last recorded state, if any.
    pub fn final_state(&self) -> Option<&FlockState> {
        self.steps.last().map(|s| &s.state)
    }
}

/// Result of a whole run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Everything recorded up to completion or the halt.
    pub trajectory: Trajectory,
    /// First bound crossing observed, whether or not it halted the run.
    pub violation: Option<DistanceBoundViolation>,
    /// True when the full horizon was simulated.
    pub completed: bool,
}

/// First pair (in `(i, j)`, `i < j` order) whose squared distance is
/// outside the guarded open window.
fn check_bounds(
    state: &FlockState,
    p: &ControlParams,
    guard: f64,
) -> Option<DistanceBoundViolation> {
    let k = state.len();
    for i in 0..k {
        for j in (i + 1)..k {
            let sq = squared_distance(state.agents[i].position, state.agents[j].position);
            if sq <= p.d0 + guard {
                return Some(DistanceBoundViolation::lower(sq).with_pair(i, j));
            }
            if sq >= p.d1 - guard {
                return Some(DistanceBoundViolation::upper(sq).with_pair(i, j));
            }
        }
    }
    None
}

/// Continuous-law step: integrate the coupled system under the law (and
/// leader script), then apply the speed clamp to governed agents.
fn continuous_step(
    state: &FlockState,
    spec: &ScenarioSpec,
) -> Result<(FlockState, Vec<Vec2>), DistanceBoundViolation> {
    let leader = spec.leader_index();
    let deriv = |t: f64, s: &FlockState| -> Result<AgentDerivs, DistanceBoundViolation> {
        let mut out = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            let u = if leader == Some(i) {
                let script = spec.leader_script.as_ref().expect("leader implies script");
                leader_input(t, script)
            } else {
                let raw =
                    baseline_control_input(spec.law, s, i, &spec.params).map_err(|e| e.at_time(t))?;
                saturate_acceleration(raw, &spec.limits)
            };
            out.push((s.agents[i].velocity, u));
        }
        Ok(out)
    };
    let (mut next, start_derivs) = advance(spec.integrator.scheme, state, spec.integrator.dt, &deriv)?;
    if spec.limits.enabled {
        for (i, a) in next.agents.iter_mut().enumerate() {
            if leader != Some(i) {
                a.velocity = clamp_speed(a.velocity, &spec.limits);
            }
        }
    }
    Ok((next, start_derivs.into_iter().map(|(_, u)| u).collect()))
}

/// Discrete-law step: optional synchronous heading update, then a
/// constant-velocity drift; a scripted leader is integrated continuously.
fn discrete_step(state: &FlockState, spec: &ScenarioSpec) -> (FlockState, Vec<Vec2>) {
    let dt = spec.integrator.dt;
    let t = state.time;
    let leader = spec.leader_index();

    let mut velocities: Vec<Vec2> = if vicsek::heading_update_due(t, dt) {
        vicsek::updated_velocities(state, leader, spec.discrete_common_speed())
    } else {
        state.agents.iter().map(|a| a.velocity).collect()
    };
    let mut positions: Vec<Vec2> = state.agents.iter().map(|a| a.position).collect();

    if let Some(li) = leader {
        let script = spec.leader_script.as_ref().expect("leader implies script");
        let solo = FlockState::new(t, vec![state.agents[li]]);
        let deriv = |ts: f64, s: &FlockState| -> Result<AgentDerivs, DistanceBoundViolation> {
            Ok(vec![(s.agents[0].velocity, leader_input(ts, script))])
        };
        let (next_leader, _) = advance(spec.integrator.scheme, &solo, dt, &deriv)
            .expect("leader integration has no failure modes");
        positions[li] = next_leader.agents[0].position;
        velocities[li] = next_leader.agents[0].velocity;
    }

    for i in 0..state.len() {
        if leader != Some(i) {
            positions[i] += dt * velocities[i];
        }
    }

    let controls = state
        .agents
        .iter()
        .zip(&velocities)
        .map(|(a, &v)| (v - a.velocity) / dt)
        .collect();
    let agents = positions
        .into_iter()
        .zip(velocities)
        .map(|(p, v)| AgentState::new(p, v))
        .collect();
    (FlockState::new(t + dt, agents), controls)
}

/// Advances the flock one step under the scenario's law.
///
/// The post-step state is checked against the guarded distance window.
///
/// # Errors
///
/// Returns the violation when the law halts on the crossed side (or when
/// a kernel evaluation already failed inside an integrator stage);
/// non-halting crossings come back inside [`StepResult`].
pub fn step(state: &FlockState, spec: &ScenarioSpec) -> Result<StepResult, DistanceBoundViolation> {
    let (next, controls) = if spec.law.is_discrete() {
        discrete_step(state, spec)
    } else {
        continuous_step(state, spec)?
    };
    match check_bounds(&next, &spec.params, GUARD_BAND).map(|v| v.at_time(next.time)) {
        Some(v) if spec.law.halts_on(v.side) => Err(v),
        violation => Ok(StepResult {
            next,
            controls,
            violation,
        }),
    }
}

/// Accelerations to record for a state that will not be stepped further.
fn closing_controls(state: &FlockState, spec: &ScenarioSpec) -> Vec<Vec2> {
    if spec.law.is_discrete() {
        return vec![Vec2::ZERO; state.len()];
    }
    let leader = spec.leader_index();
    (0..state.len())
        .map(|i| {
            if leader == Some(i) {
                let script = spec.leader_script.as_ref().expect("leader implies script");
                leader_input(state.time, script)
            } else {
                baseline_control_input(spec.law, state, i, &spec.params)
                    .map(|u| saturate_acceleration(u, &spec.limits))
                    .unwrap_or(Vec2::ZERO)
            }
        })
        .collect()
}

/// Runs the scenario over its whole horizon.
///
/// Records state, commanded accelerations, and diagnostics at every step
/// boundary (`t = i · dt`). A crossing of the distance window is recorded
/// once; it ends the run early only when the law halts on that side, in
/// which case the last in-bounds state is the final record and
/// `completed` is false.
///
/// # Errors
///
/// Only for invalid scenarios; bound violations are reported inside
/// [`RunOutcome`].
pub fn run(spec: &ScenarioSpec) -> Result<RunOutcome, ScenarioError> {
    spec.validate()?;
    let params = spec.params;
    let dt = spec.integrator.dt;
    let total_steps = spec.integrator.step_count();

    let mut steps = Vec::with_capacity(total_steps + 1);
    let mut first_violation: Option<DistanceBoundViolation> = None;
    let mut state = spec.initial_state();

    // The constructor guarantees the open window; the guard band is
    // slightly stricter, so re-check the initial state under run rules.
    if let Some(v) = check_bounds(&state, &params, GUARD_BAND) {
        let v = v.at_time(0.0);
        first_violation = Some(v);
        if spec.law.halts_on(v.side) {
            let controls = vec![Vec2::ZERO; state.len()];
            let diagnostics = diagnose(&state, &params);
            steps.push(TrajectoryStep {
                state,
                controls,
                diagnostics,
            });
            return Ok(RunOutcome {
                trajectory: Trajectory { steps },
                violation: first_violation,
                completed: false,
            });
        }
    }

    for i in 0..total_steps {
        match step(&state, spec) {
            Ok(result) => {
                steps.push(TrajectoryStep {
                    diagnostics: diagnose(&state, &params),
                    controls: result.controls,
                    state,
                });
                if first_violation.is_none() {
                    first_violation = result.violation;
                }
                state = result.next;
                // Canonical time stamps: i·dt rather than accumulated sums.
                state.time = (i + 1) as f64 * dt;
            }
            Err(v) => {
                let controls = vec![Vec2::ZERO; state.len()];
                steps.push(TrajectoryStep {
                    diagnostics: diagnose(&state, &params),
                    controls,
                    state,
                });
                if first_violation.is_none() {
                    first_violation = Some(v);
                }
                return Ok(RunOutcome {
                    trajectory: Trajectory { steps },
                    violation: first_violation,
                    completed: false,
                });
            }
        }
    }

    let controls = closing_controls(&state, spec);
    steps.push(TrajectoryStep {
        diagnostics: diagnose(&state, &params),
        controls,
        state,
    });
    Ok(RunOutcome {
        trajectory: Trajectory { steps },
        violation: first_violation,
        completed: true,
    })
}

#[cfg(test)]
// Reference values are written with all 17 significant digits so they
// stay bit-exact even where fewer digits would round-trip.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::integrator::{IntegratorConfig, Scheme};
    use approx::assert_abs_diff_eq;
    use flock_core::ControlLawKind;

    fn short(mut spec: ScenarioSpec, duration: f64) -> ScenarioSpec {
        spec.integrator.duration = duration;
        spec
    }

    /// Two agents at squared distance 2.2, separating fast. Under Euler
    /// the first step overshoots the upper bound.
    fn separating_pair(law: ControlLawKind) -> ScenarioSpec {
        ScenarioSpec {
            law,
            initial: vec![
                crate::scenario::InitialAgent::new(0.0, 0.0, 180.0, 5.0),
                crate::scenario::InitialAgent::new(1.4832396974191326, 0.0, 0.0, 5.0),
            ],
            integrator: IntegratorConfig {
                scheme: Scheme::Euler,
                dt: 0.01,
                duration: 0.1,
            },
            ..ScenarioSpec::leaderless_three()
        }
    }

    /// Two agents at squared distance 1.05, closing fast.
    fn closing_pair(law: ControlLawKind) -> ScenarioSpec {
        ScenarioSpec {
            law,
            initial: vec![
                crate::scenario::InitialAgent::new(0.0, 0.0, 0.0, 5.0),
                crate::scenario::InitialAgent::new(1.0246950765959598, 0.0, 180.0, 5.0),
            ],
            integrator: IntegratorConfig {
                scheme: Scheme::Euler,
                dt: 0.01,
                duration: 0.1,
            },
            ..ScenarioSpec::leaderless_three()
        }
    }

    #[test]
    fn consensus_euler_step_is_pure_drift() {
        let mut spec = ScenarioSpec::leaderless_three();
        spec.integrator.scheme = Scheme::Euler;
        // Same heading and speed everywhere: the law commands exactly zero.
        for a in &mut spec.initial {
            a.orientation_deg = 30.0;
            a.speed = 0.4;
        }
        let state = spec.initial_state();
        let result = step(&state, &spec).unwrap();
        assert!(result.violation.is_none());
        for (before, after) in state.agents.iter().zip(&result.next.agents) {
            assert_eq!(after.velocity, before.velocity);
            assert_eq!(after.position, before.position + 0.01 * before.velocity);
        }
        assert!(result.controls.iter().all(|u| *u == Vec2::ZERO));
    }

    #[test]
    fn euler_step_matches_frozen_reference() {
        let mut spec = ScenarioSpec::leaderless_three();
        spec.integrator.scheme = Scheme::Euler;
        let state = spec.initial_state();
        let result = step(&state, &spec).unwrap();
        let expected = [
            (
                Vec2::new(3.81837661840735707e-3, 3.81837661840735663e-3),
                Vec2::new(3.51964308549160332e-1, 3.59502680184573931e-1),
            ),
            (
                Vec2::new(1.24703015151901653, 2.96984848098349975e-3),
                Vec2::new(-2.66139264661131136e-1, 2.73397974094605256e-1),
            ),
            (
                Vec2::new(6.30000000000000004e-1, 1.07010000000000005),
                Vec2::new(-9.72230145643619703e-4, -9.44078144340093517e-1),
            ),
        ];
        for (agent, (pos, vel)) in result.next.agents.iter().zip(expected) {
            assert_abs_diff_eq!(agent.position.x(), pos.x(), epsilon = 1e-12);
            assert_abs_diff_eq!(agent.position.y(), pos.y(), epsilon = 1e-12);
            assert_abs_diff_eq!(agent.velocity.x(), vel.x(), epsilon = 1e-12);
            assert_abs_diff_eq!(agent.velocity.y(), vel.y(), epsilon = 1e-12);
        }
        // Recorded controls are the commanded accelerations at step start.
        assert_abs_diff_eq!(result.controls[0].x(), -2.98733532915753575, epsilon = 1e-12);
        assert_abs_diff_eq!(result.controls[2].y(), 4.59218556599064343, epsilon = 1e-12);
    }

    #[test]
    fn bounded_law_halts_on_upper_crossing() {
        let outcome = run(&separating_pair(ControlLawKind::Proposed)).unwrap();
        assert!(!outcome.completed);
        let v = outcome.violation.unwrap();
        assert_eq!(v.side, flock_core::BoundSide::Upper);
        assert_eq!(v.pair, Some((0, 1)));
        // Only the initial in-bounds record exists: the first step already
        // overshot.
        assert_eq!(outcome.trajectory.len(), 1);
        assert!(outcome.trajectory.final_state().unwrap().is_finite());
    }

    #[test]
    fn alignment_only_law_records_crossing_and_continues() {
        let outcome = run(&separating_pair(ControlLawKind::Model2CuckerSmale)).unwrap();
        assert!(outcome.completed);
        let v = outcome.violation.unwrap();
        assert_eq!(v.side, flock_core::BoundSide::Upper);
        assert_eq!(outcome.trajectory.len(), 11);
        // Diagnostics keep flowing after the crossing, with NaN energy.
        let last = outcome.trajectory.steps.last().unwrap();
        assert!(last.diagnostics.max_sq_dist > 2.25);
        assert!(last.diagnostics.energy.is_nan());
    }

    #[test]
    fn repulsion_law_halts_only_on_lower_side() {
        let lower = run(&closing_pair(ControlLawKind::Model3CuckerDong)).unwrap();
        assert!(!lower.completed);
        assert_eq!(
            lower.violation.unwrap().side,
            flock_core::BoundSide::Lower
        );

        let upper = run(&separating_pair(ControlLawKind::Model3CuckerDong)).unwrap();
        assert!(upper.completed);
        assert_eq!(
            upper.violation.unwrap().side,
            flock_core::BoundSide::Upper
        );
    }

    #[test]
    fn trajectory_time_stamps_are_exact_step_multiples() {
        let spec = short(ScenarioSpec::leaderless_three(), 0.5);
        let outcome = run(&spec).unwrap();
        assert!(outcome.completed);
        assert_eq!(outcome.trajectory.len(), 51);
        for (i, s) in outcome.trajectory.steps.iter().enumerate() {
            assert_eq!(s.state.time, i as f64 * 0.01);
            assert_eq!(s.diagnostics.time, s.state.time);
        }
    }

    #[test]
    fn leader_follows_its_script_from_the_first_step() {
        let spec = short(ScenarioSpec::leader_follower_pair(), 1.0);
        let outcome = run(&spec).unwrap();
        assert!(outcome.completed);
        assert!(outcome.violation.is_none());
        let first = &outcome.trajectory.steps[0];
        assert_eq!(first.controls[0], Vec2::new(0.0, 1.0));
        // The follower reacts to the leader, not the script.
        assert_ne!(first.controls[1], Vec2::new(0.0, 1.0));
    }

    #[test]
    fn runs_are_bitwise_deterministic() {
        let spec = short(ScenarioSpec::leaderless_three(), 1.0);
        let a = run(&spec).unwrap();
        let b = run(&spec).unwrap();
        assert_eq!(a.trajectory.len(), b.trajectory.len());
        for (sa, sb) in a.trajectory.steps.iter().zip(&b.trajectory.steps) {
            for (aa, ab) in sa.state.agents.iter().zip(&sb.state.agents) {
                assert_eq!(aa.position.x().to_bits(), ab.position.x().to_bits());
                assert_eq!(aa.position.y().to_bits(), ab.position.y().to_bits());
                assert_eq!(aa.velocity.x().to_bits(), ab.velocity.x().to_bits());
                assert_eq!(aa.velocity.y().to_bits(), ab.velocity.y().to_bits());
            }
            assert_eq!(
                sa.diagnostics.energy.to_bits(),
                sb.diagnostics.energy.to_bits()
            );
        }
    }

    #[test]
    fn invalid_spec_is_rejected_before_running() {
        let mut spec = ScenarioSpec::leaderless_three();
        spec.initial.truncate(1);
        assert!(run(&spec).is_err());
    }
}
