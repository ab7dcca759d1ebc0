//! Scripted acceleration of the leader agent.

use crate::error::ScenarioError;
use flock_core::Vec2;

/// Deterministic leader acceleration: a slow sinusoid whose sign flips
/// once mid-run.
///
/// Before `switch_time` the input is
/// `amplitude · (sin(πt/180), cos(πt/180))`; from `switch_time` on it is
/// negated. The period is 360 s, so over a typical horizon the leader
/// sweeps a slowly turning arc and the flip is a genuine disturbance the
/// followers must absorb.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeaderScript {
    /// Time (s) at which the input sign flips; the flip instant itself
    /// uses the negated branch.
    pub switch_time: f64,
    /// Acceleration magnitude scale (m/s²).
    pub amplitude: f64,
}

impl Default for LeaderScript {
    fn default() -> Self {
        Self {
            switch_time: 125.0,
            amplitude: 1.0,
        }
    }
}

impl LeaderScript {
    /// Checks the script's parameters.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.switch_time.is_finite() && self.switch_time > 0.0) {
            return Err(ScenarioError::BadSwitchTime {
                switch_time: self.switch_time,
            });
        }
        if !self.amplitude.is_finite() {
            return Err(ScenarioError::BadAmplitude {
                amplitude: self.amplitude,
            });
        }
        Ok(())
    }
}

/// Evaluates the leader acceleration at time `t`.
pub fn leader_input(t: f64, script: &LeaderScript) -> Vec2 {
    let phase = std::f64::consts::PI * t / 180.0;
    let u = script.amplitude * Vec2::new(phase.sin(), phase.cos());
    if t < script.switch_time {
        u
    } else {
        -u
    }
}
