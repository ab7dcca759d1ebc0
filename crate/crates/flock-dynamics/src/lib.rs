//! Scenario definitions and time integration for the flocking library.
//!
//! This crate turns the instantaneous control laws of `flock-core` into
//! whole trajectories: it defines ready-made scenarios (a leaderless
//! three-agent flock and a leader–follower pair), fixed-step Euler and
//! classic Runge–Kutta integrators, a scripted leader input, optional
//! actuation limits, and a run loop that enforces the pairwise distance
//! window at every step.
//!
//! Control laws with a repulsion or cohesion barrier halt when the
//! corresponding bound is crossed (the barrier is undefined beyond it);
//! alignment-only laws record the first crossing and keep running so the
//! failure mode stays observable. The discrete heading-consensus law is
//! advanced with synchronous heading updates at fixed wall-clock
//! intervals between constant-velocity drifts.

mod error;
mod integrator;
mod leader;
mod saturation;
mod scenario;
mod sim;
mod vicsek;

pub use error::ScenarioError;
pub use integrator::{IntegratorConfig, Scheme, UnknownScheme};
pub use leader::{leader_input, LeaderScript};
pub use saturation::{clamp_speed, saturate_acceleration};
pub use scenario::{polar_to_velocity, InitialAgent, ScenarioSpec};
pub use sim::{run, step, RunOutcome, StepResult, Trajectory, TrajectoryStep, GUARD_BAND};
pub use vicsek::{HEADING_UPDATE_INTERVAL, INTERACTION_RADIUS};
