//! Per-step diagnostic snapshot of a flock.

use crate::energy::energy;
use crate::projection::project_velocity;
use flock_core::{squared_distance, velocity_dispersion, ControlParams, FlockState, Vec2};

/// All monitored quantities for one simulation instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    /// Simulation time (s).
    pub time: f64,
    /// Flock energy; `NaN` while any pair is outside the distance bounds
    /// (the potential is undefined there).
    pub energy: f64,
    /// Velocity dispersion `Λ(v)`.
    pub dispersion: f64,
    /// Mean velocity (conserved by the bounded law).
    pub mean_velocity: Vec2,
    /// Norm of the mean-removed stacked velocity.
    pub projected_speed_norm: f64,
    /// Smallest pairwise squared distance.
    pub min_sq_dist: f64,
    /// Largest pairwise squared distance.
    pub max_sq_dist: f64,
    /// Mean pairwise Euclidean (not squared) distance (m).
    pub avg_distance: f64,
}

/// Computes the diagnostic snapshot for one state.
///
/// Never fails: an out-of-bounds pair shows up as `NaN` energy and as
/// `min_sq_dist`/`max_sq_dist` outside `(d0, d1)` rather than as an error,
/// so diagnostics can be recorded along baseline runs that leave the
/// bounds. Pairwise fields are `NaN` for flocks with fewer than two
/// agents.
pub fn diagnose(flock: &FlockState, p: &ControlParams) -> DiagnosticsRecord {
    let k = flock.len();
    let mut min_sq = f64::INFINITY;
    let mut max_sq = f64::NEG_INFINITY;
    let mut dist_sum = 0.0;
    let mut pairs = 0usize;
    for i in 0..k {
        for j in 0..i {
            let sq = squared_distance(flock.agents[i].position, flock.agents[j].position);
            min_sq = min_sq.min(sq);
            max_sq = max_sq.max(sq);
            dist_sum += sq.sqrt();
            pairs += 1;
        }
    }
    let (min_sq_dist, max_sq_dist, avg_distance) = if pairs == 0 {
        (f64::NAN, f64::NAN, f64::NAN)
    } else {
        (min_sq, max_sq, dist_sum / pairs as f64)
    };

    let decomposition = project_velocity(flock);
    DiagnosticsRecord {
        time: flock.time,
        energy: energy(flock, p).unwrap_or(f64::NAN),
        dispersion: velocity_dispersion(flock),
        mean_velocity: decomposition.mean,
        projected_speed_norm: decomposition.residual_norm,
        min_sq_dist,
        max_sq_dist,
        avg_distance,
    }
}
