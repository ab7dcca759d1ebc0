//! Scenario construction and validation.

use crate::error::ScenarioError;
use crate::integrator::IntegratorConfig;
use crate::leader::LeaderScript;
use flock_core::{
    squared_distance, AgentState, ControlLawKind, ControlParams, FlockState, SaturationLimits,
    Vec2,
};

/// Converts a heading (degrees counterclockwise from +x) and speed into a
/// velocity vector.
pub fn polar_to_velocity(orientation_deg: f64, speed: f64) -> Vec2 {
    let rad = orientation_deg.to_radians();
    Vec2::new(speed * rad.cos(), speed * rad.sin())
}

/// Initial condition of one agent: where it starts, which way it points,
/// and how fast it moves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialAgent {
    /// Starting position (m).
    pub position: Vec2,
    /// Heading in degrees counterclockwise from the +x axis.
    pub orientation_deg: f64,
    /// Speed (m/s), non-negative.
    pub speed: f64,
}

impl InitialAgent {
    /// Builds an initial condition from coordinates, heading, and speed.
    pub const fn new(x: f64, y: f64, orientation_deg: f64, speed: f64) -> Self {
        Self {
            position: Vec2::new(x, y),
            orientation_deg,
            speed,
        }
    }

    /// The agent's initial velocity vector.
    pub fn velocity(&self) -> Vec2 {
        polar_to_velocity(self.orientation_deg, self.speed)
    }
}

/// Everything needed to reproduce a run: law, parameters, limits, initial
/// conditions, optional leader script, and integrator settings.
///
/// When a leader script is present, agent 0 is the leader: it follows the
/// script, ignores its flockmates, and is exempt from saturation; the
/// remaining agents run the configured law.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    /// Control law governing the (non-leader) agents.
    pub law: ControlLawKind,
    /// Law parameters.
    pub params: ControlParams,
    /// Actuator limits for law-governed agents.
    pub limits: SaturationLimits,
    /// Per-agent initial conditions.
    pub initial: Vec<InitialAgent>,
    /// Present for leader–follower scenarios.
    pub leader_script: Option<LeaderScript>,
    /// Step size, scheme, and horizon.
    pub integrator: IntegratorConfig,
}

impl ScenarioSpec {
    /// Bundled leaderless scenario: three agents on crossing headings,
    /// default parameters, 250 s at dt = 0.01 under fourth-order
    /// integration.
    pub fn leaderless_three() -> Self {
        Self {
            law: ControlLawKind::Proposed,
            params: ControlParams::default(),
            limits: SaturationLimits::default(),
            initial: vec![
                InitialAgent::new(0.0, 0.0, 45.0, 0.54),
                InitialAgent::new(1.25, 0.0, 135.0, 0.42),
                InitialAgent::new(0.63, 1.08, 270.0, 0.99),
            ],
            leader_script: None,
            integrator: IntegratorConfig::default(),
        }
    }

    /// Bundled leader–follower scenario: a scripted leader (agent 0) and
    /// one law-governed follower, with a widened distance window
    /// `(1, 8)` and slower alignment decay suited to tracking.
    pub fn leader_follower_pair() -> Self {
        Self {
            law: ControlLawKind::Proposed,
            params: ControlParams {
                beta: 0.25,
                d1: 8.0,
                ..ControlParams::default()
            },
            limits: SaturationLimits::default(),
            initial: vec![
                InitialAgent::new(0.0, 1.32, 118.0, 0.88),
                InitialAgent::new(0.0, 0.0, 92.0, 0.50),
            ],
            leader_script: Some(LeaderScript::default()),
            integrator: IntegratorConfig::default(),
        }
    }

    /// Index of the scripted leader, when the scenario has one.
    pub fn leader_index(&self) -> Option<usize> {
        self.leader_script.as_ref().map(|_| 0)
    }

    /// Checks parameters, limits, integrator, leader script, and initial
    /// conditions (including strict containment of every initial pairwise
    /// squared distance in the open window `(d0, d1)`).
    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.params.validate_for(self.law)?;
        self.limits.validate()?;
        self.integrator.validate()?;
        if let Some(script) = &self.leader_script {
            script.validate()?;
        }
        if self.initial.len() < 2 {
            return Err(ScenarioError::TooFewAgents {
                count: self.initial.len(),
            });
        }
        for (index, agent) in self.initial.iter().enumerate() {
            if !(agent.position.is_finite()
                && agent.orientation_deg.is_finite()
                && agent.speed.is_finite())
            {
                return Err(ScenarioError::NonFiniteInitial { index });
            }
            if agent.speed < 0.0 {
                return Err(ScenarioError::NegativeSpeed {
                    index,
                    speed: agent.speed,
                });
            }
        }
        for i in 0..self.initial.len() {
            for j in (i + 1)..self.initial.len() {
                let sq = squared_distance(self.initial[i].position, self.initial[j].position);
                if sq <= self.params.d0 || sq >= self.params.d1 {
                    return Err(ScenarioError::InitialOutOfBounds {
                        i,
                        j,
                        sq_dist: sq,
                        d0: self.params.d0,
                        d1: self.params.d1,
                    });
                }
            }
        }
        Ok(())
    }

    /// Common speed of the discrete baseline: the mean of the governed
    /// (non-leader) agents' initial speeds.
    pub fn discrete_common_speed(&self) -> f64 {
        let leader = self.leader_index();
        let mut sum = 0.0;
        let mut count = 0usize;
        for (i, a) in self.initial.iter().enumerate() {
            if leader == Some(i) {
                continue;
            }
            sum += a.speed;
            count += 1;
        }
        if count == 0 {
            0.0
        } else {
            sum / count as f64
        }
    }

    /// Builds the state at `t = 0`.
    ///
    /// For the discrete heading-consensus law the governed agents start at
    /// the common speed (keeping their configured headings), since that
    /// law holds speed constant; every other law uses the configured
    /// speeds as given.
    pub fn initial_state(&self) -> FlockState {
        let leader = self.leader_index();
        let common = self.discrete_common_speed();
        let agents = self
            .initial
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let speed = if self.law == ControlLawKind::Model1Vicsek && leader != Some(i) {
                    common
                } else {
                    a.speed
                };
                AgentState::new(a.position, polar_to_velocity(a.orientation_deg, speed))
            })
            .collect();
        FlockState::new(0.0, agents)
    }
}
