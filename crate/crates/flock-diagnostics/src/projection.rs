//! Mean/residual decomposition of the stacked velocity.

use flock_core::{FlockState, Vec2};

/// Orthogonal split of the stacked velocity into its consensus part (the
/// mean copied to every agent) and the residual.
///
/// The residual is orthogonal to the consensus part by construction; the
/// mean is conserved by the bounded law while the residual decays, so
/// `residual_norm` is the quantity that measures convergence.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityDecomposition {
    /// Mean velocity over all agents.
    pub mean: Vec2,
    /// Per-agent `v_i - mean`.
    pub residuals: Vec<Vec2>,
    /// Euclidean norm of the stacked residuals.
    pub residual_norm: f64,
}

/// Decomposes the flock's velocities into mean and residual parts.
pub fn project_velocity(flock: &FlockState) -> VelocityDecomposition {
    let mean = flock.mean_velocity();
    let residuals: Vec<Vec2> = flock.agents.iter().map(|a| a.velocity - mean).collect();
    let residual_norm = residuals
        .iter()
        .map(|r| r.norm_squared())
        .sum::<f64>()
        .sqrt();
    VelocityDecomposition {
        mean,
        residuals,
        residual_norm,
    }
}
