//! Closed-form energy of the flock.
//!
//! The energy is the residual-velocity norm plus, for every unordered
//! pair, the barrier potential
//!
//! ```text
//! ∫_sq^{d1-δ} (f0(r) - f1(r)) dr
//! ```
//!
//! integrated in closed form. It is non-increasing along trajectories of
//! the bounded law, which is what forces bound-keeping (the potential
//! diverges at `d0`) and velocity convergence (the residual norm must
//! decay). The cutoff `δ` fixes each potential's zero point just inside
//! the upper bound; pairs closer to `d1` than `δ` get a small negative
//! potential, which is harmless for monotonicity.

use crate::projection::project_velocity;
use flock_core::{squared_distance, ControlParams, DistanceBoundViolation, FlockState};

/// Antiderivative of `(r - d)^-theta` evaluated at `r`.
fn antiderivative(r: f64, d: f64, theta: u32) -> f64 {
    if theta == 1 {
        (r - d).abs().ln()
    } else {
        (r - d).powi(1 - theta as i32) / (1.0 - theta as f64)
    }
}

/// Barrier potential of one pair at squared distance `sq_dist`:
/// the kernel difference `f0 - f1` integrated from `sq_dist` to `d1 - delta`.
///
/// # Errors
///
/// [`DistanceBoundViolation`] when `sq_dist` is outside `(d0, d1)`.
pub fn pair_potential(sq_dist: f64, p: &ControlParams) -> Result<f64, DistanceBoundViolation> {
    if sq_dist <= p.d0 {
        return Err(DistanceBoundViolation::lower(sq_dist));
    }
    if sq_dist >= p.d1 {
        return Err(DistanceBoundViolation::upper(sq_dist));
    }
    let upper = p.d1 - p.delta;
    let theta = p.theta;
    let repulsion = antiderivative(upper, p.d0, theta) - antiderivative(sq_dist, p.d0, theta);
    let cohesion = antiderivative(upper, p.d1, theta) - antiderivative(sq_dist, p.d1, theta);
    Ok(repulsion - cohesion)
}

/// Total energy: residual-velocity norm plus half the sum of all pair
/// potentials (half because the pairwise sum in the law counts ordered
/// pairs).
///
/// # Errors
///
/// [`DistanceBoundViolation`] (with the pair attached) when any pairwise
/// squared distance is outside `(d0, d1)`.
pub fn energy(flock: &FlockState, p: &ControlParams) -> Result<f64, DistanceBoundViolation> {
    let k = flock.len();
    let mut potential = 0.0;
    for i in 0..k {
        for j in 0..i {
            let sq = squared_distance(flock.agents[i].position, flock.agents[j].position);
            potential += pair_potential(sq, p).map_err(|e| e.with_pair(j, i))?;
        }
    }
    Ok(project_velocity(flock).residual_norm + 0.5 * potential)
}
