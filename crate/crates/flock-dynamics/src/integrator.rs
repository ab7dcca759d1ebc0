//! Fixed-step explicit integration of the coupled position/velocity system.

use crate::error::ScenarioError;
use flock_core::{DistanceBoundViolation, FlockState, Vec2};

/// Explicit integration scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// First-order forward Euler.
    Euler,
    /// Classic fourth-order Runge–Kutta.
    Rk4,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scheme::Euler => f.write_str("euler"),
            Scheme::Rk4 => f.write_str("rk4"),
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euler" => Ok(Scheme::Euler),
            "rk4" => Ok(Scheme::Rk4),
            _ => Err(UnknownScheme(s.to_owned())),
        }
    }
}

/// An unrecognised integration-scheme name.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown integration scheme `{0}`; expected euler or rk4")]
pub struct UnknownScheme(pub String);

/// Scheme, step size, and horizon of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    /// Integration scheme.
    pub scheme: Scheme,
    /// Step size (s).
    pub dt: f64,
    /// Simulated horizon (s).
    pub duration: f64,
}

impl Default for IntegratorConfig {
    /// Fourth-order integration at 0.01 s over 250 s, the settings used by
    /// the bundled scenarios.
    fn default() -> Self {
        Self {
            scheme: Scheme::Rk4,
            dt: 0.01,
            duration: 250.0,
        }
    }
}

impl IntegratorConfig {
    /// Checks step and horizon sanity.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(ScenarioError::BadTimeStep { dt: self.dt });
        }
        if !(self.duration.is_finite() && self.duration >= self.dt) {
            return Err(ScenarioError::BadDuration {
                dt: self.dt,
                duration: self.duration,
            });
        }
        Ok(())
    }

    /// Number of steps covering the horizon (rounded to the nearest whole
    /// step).
    pub fn step_count(&self) -> usize {
        (self.duration / self.dt).round() as usize
    }
}

/// Per-agent time derivative: `(d position, d velocity)`.
pub(crate) type AgentDerivs = Vec<(Vec2, Vec2)>;

/// State shifted by `scale` times a derivative sample, with the given time
/// stamp. Used for integrator stages.
fn offset_state(base: &FlockState, derivs: &AgentDerivs, scale: f64, time: f64) -> FlockState {
    let agents = base
        .agents
        .iter()
        .zip(derivs)
        .map(|(a, &(dp, dv))| flock_core::AgentState {
            position: a.position + scale * dp,
            velocity: a.velocity + scale * dv,
        })
        .collect();
    FlockState::new(time, agents)
}

/// Advances one step with the chosen scheme.
///
/// Returns the next state plus the derivative evaluated at the step start
/// (the accelerations actually commanded at this instant, recorded in the
/// trajectory).
///
/// # Errors
///
/// Propagates evaluation failures (distance-bound violations at a stage
/// state) from the derivative function.
pub(crate) fn advance(
    scheme: Scheme,
    state: &FlockState,
    dt: f64,
    deriv: &dyn Fn(f64, &FlockState) -> Result<AgentDerivs, DistanceBoundViolation>,
) -> Result<(FlockState, AgentDerivs), DistanceBoundViolation> {
    let t = state.time;
    let k1 = deriv(t, state)?;
    let next = match scheme {
        Scheme::Euler => offset_state(state, &k1, dt, t + dt),
        Scheme::Rk4 => {
            let half = dt / 2.0;
            let s2 = offset_state(state, &k1, half, t + half);
            let k2 = deriv(t + half, &s2)?;
            let s3 = offset_state(state, &k2, half, t + half);
            let k3 = deriv(t + half, &s3)?;
            let s4 = offset_state(state, &k3, dt, t + dt);
            let k4 = deriv(t + dt, &s4)?;
            let agents = state
                .agents
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let dp = k1[i].0 + 2.0 * k2[i].0 + 2.0 * k3[i].0 + k4[i].0;
                    let dv = k1[i].1 + 2.0 * k2[i].1 + 2.0 * k3[i].1 + k4[i].1;
                    flock_core::AgentState {
                        position: a.position + (dt / 6.0) * dp,
                        velocity: a.velocity + (dt / 6.0) * dv,
                    }
                })
                .collect();
            FlockState::new(t + dt, agents)
        }
    };
    Ok((next, k1))
}
