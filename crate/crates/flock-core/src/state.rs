//! Flock state containers.

use crate::vec2::Vec2;

/// Kinematic state of a single agent.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AgentState {
    /// Position in the plane.
    pub position: Vec2,
    /// Velocity in the plane.
    pub velocity: Vec2,
}

impl AgentState {
    /// Builds an agent state.
    pub const fn new(position: Vec2, velocity: Vec2) -> Self {
        Self { position, velocity }
    }
}

/// State of the whole flock at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct FlockState {
    /// Simulation time in seconds.
    pub time: f64,
    /// Per-agent states; the flock size is `agents.len()`.
    pub agents: Vec<AgentState>,
}

impl FlockState {
    /// Builds a flock state.
    pub fn new(time: f64, agents: Vec<AgentState>) -> Self {
        Self { time, agents }
    }

    /// Number of agents.
    pub fn len(&self) -> usize {
        self.agents.len()
    }

    /// True for an empty flock. Control laws require at least two agents,
    /// but containers stay total.
    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    /// True when every position and velocity component is finite.
    pub fn is_finite(&self) -> bool {
        self.agents
            .iter()
            .all(|a| a.position.is_finite() && a.velocity.is_finite())
    }

    /// Mean velocity over all agents.
    ///
    /// Returns the zero vector for an empty flock.
    pub fn mean_velocity(&self) -> Vec2 {
        if self.agents.is_empty() {
            return Vec2::ZERO;
        }
        let mut sum = Vec2::ZERO;
        for a in &self.agents {
            sum += a.velocity;
        }
        sum / self.agents.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_velocity_averages_components() {
        let flock = FlockState::new(
            0.0,
            vec![
                AgentState::new(Vec2::ZERO, Vec2::new(1.0, -2.0)),
                AgentState::new(Vec2::new(1.0, 0.0), Vec2::new(3.0, 4.0)),
            ],
        );
        assert_eq!(flock.mean_velocity(), Vec2::new(2.0, 1.0));
        assert_eq!(flock.len(), 2);
        assert!(!flock.is_empty());
        assert!(flock.is_finite());
    }

    #[test]
    fn empty_flock_is_harmless() {
        let flock = FlockState::new(0.0, vec![]);
        assert!(flock.is_empty());
        assert_eq!(flock.mean_velocity(), Vec2::ZERO);
    }

    #[test]
    fn non_finite_components_are_detected() {
        let flock = FlockState::new(
            0.0,
            vec![AgentState::new(Vec2::new(f64::NAN, 0.0), Vec2::ZERO)],
        );
        assert!(!flock.is_finite());
    }
}
