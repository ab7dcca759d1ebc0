//! Scenario and integrator validation errors.

use flock_core::ParamError;
use thiserror::Error;

/// A scenario that cannot be simulated as specified.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    /// Control-law or limit parameters are invalid.
    #[error(transparent)]
    Params(#[from] ParamError),
    /// The laws are defined for at least two agents.
    #[error("scenario needs at least two agents, got {count}")]
    TooFewAgents {
        /// Number of agents provided.
        count: usize,
    },
    /// An initial pair already sits outside the open distance window.
    #[error(
        "initial squared distance {sq_dist} for pair ({i}, {j}) is outside \
         the open interval ({d0}, {d1})"
    )]
    InitialOutOfBounds {
        /// First agent of the pair.
        i: usize,
        /// Second agent of the pair.
        j: usize,
        /// The offending squared distance.
        sq_dist: f64,
        /// Lower bound.
        d0: f64,
        /// Upper bound.
        d1: f64,
    },
    /// An initial agent has a NaN or infinite field.
    #[error("initial agent {index} has a non-finite position, orientation, or speed")]
    NonFiniteInitial {
        /// Index of the offending agent.
        index: usize,
    },
    /// Speeds are magnitudes and cannot be negative.
    #[error("initial agent {index} has negative speed {speed}")]
    NegativeSpeed {
        /// Index of the offending agent.
        index: usize,
        /// The rejected speed.
        speed: f64,
    },
    /// The integrator step must be positive and finite.
    #[error("integrator dt must be positive and finite, got {dt}")]
    BadTimeStep {
        /// The rejected step.
        dt: f64,
    },
    /// The horizon must be finite and no shorter than one step.
    #[error("integrator duration must be finite and at least dt, got dt = {dt}, duration = {duration}")]
    BadDuration {
        /// Configured step.
        dt: f64,
        /// The rejected duration.
        duration: f64,
    },
    /// The leader script's sign flip must happen at a positive, finite time.
    #[error("leader switch time must be positive and finite, got {switch_time}")]
    BadSwitchTime {
        /// The rejected switch time.
        switch_time: f64,
    },
    /// The leader script's amplitude must be finite.
    #[error("leader amplitude must be finite, got {amplitude}")]
    BadAmplitude {
        /// The rejected amplitude.
        amplitude: f64,
    },
}
