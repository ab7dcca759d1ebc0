//! The distance-bounded flocking control law and its comparison baselines.
//!
//! Acceleration for agent `i` is the sum of three pairwise terms:
//!
//! * alignment `a_ij (v_j - v_i)` with weight `a_ij = K / (sigma^2 + sq)^beta`,
//! * repulsion `Λ(v) f0(sq) (x_i - x_j)` with `f0(sq) = (sq - d0)^-theta`,
//! * cohesion `Λ(v) f1(sq) (x_j - x_i)` with `f1(sq) = (sq - d1)^-theta`,
//!
//! where `sq` is the pairwise *squared* distance and `Λ(v)` is the velocity
//! dispersion of the whole flock. The kernels diverge at the bounds `d0`
//! and `d1`, which is what keeps every pairwise squared distance inside the
//! open interval `(d0, d1)`; the dispersion factor switches the position
//! forces off as the velocities reach consensus.

use crate::error::DistanceBoundViolation;
use crate::params::{ControlLawKind, ControlParams};
use crate::state::FlockState;
use crate::vec2::Vec2;

/// Squared Euclidean distance between two points.
pub fn squared_distance(a: Vec2, b: Vec2) -> f64 {
    (a - b).norm_squared()
}

/// Alignment weight `K / (sigma^2 + sq_dist)^beta`.
///
/// Strictly positive, strictly decreasing in `sq_dist`, and symmetric in
/// the pair by construction (it only sees the squared distance).
pub fn alignment_weight(sq_dist: f64, p: &ControlParams) -> f64 {
    p.gain / (p.sigma * p.sigma + sq_dist).powf(p.beta)
}

/// Velocity dispersion `Λ(v) = (1/k · Σ_{i>j} ‖v_i − v_j‖²)^½`.
///
/// Zero exactly when all velocities agree. The sum runs over unordered
/// pairs but is divided by the agent count `k`, not the pair count.
pub fn velocity_dispersion(flock: &FlockState) -> f64 {
    let k = flock.len();
    if k == 0 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 0..k {
        for j in 0..i {
            sum += (flock.agents[i].velocity - flock.agents[j].velocity).norm_squared();
        }
    }
    (sum / k as f64).sqrt()
}

/// Repulsion kernel `f0(sq) = (sq - d0)^-theta`, defined for `sq > d0`.
///
/// Diverges to `+∞` as the squared distance approaches the collision bound
/// from above.
pub fn repulsion_kernel(sq_dist: f64, p: &ControlParams) -> Result<f64, DistanceBoundViolation> {
    if sq_dist <= p.d0 {
        return Err(DistanceBoundViolation::lower(sq_dist));
    }
    Ok((sq_dist - p.d0).powi(-(p.theta as i32)))
}

/// Cohesion kernel `f1(sq) = (sq - d1)^-theta`, defined for `sq < d1`.
///
/// With an even `theta` this is positive inside the admissible window and
/// diverges to `+∞` as the squared distance approaches the upper bound, so
/// the `(x_j - x_i)` direction it multiplies pulls the pair back together.
pub fn cohesion_kernel(sq_dist: f64, p: &ControlParams) -> Result<f64, DistanceBoundViolation> {
    if sq_dist >= p.d1 {
        return Err(DistanceBoundViolation::upper(sq_dist));
    }
    Ok((sq_dist - p.d1).powi(-(p.theta as i32)))
}

/// Acceleration commanded by the bounded law for one agent.
///
/// Uses only quantities an agent can sense locally: relative displacements
/// and relative velocities. The vector sum over all agents is zero (every
/// term is pairwise antisymmetric), so the flock's mean velocity is an
/// invariant of the dynamics.
///
/// # Errors
///
/// Propagates [`DistanceBoundViolation`] (with the offending pair
/// attached) from either kernel when a pairwise squared distance is outside
/// `(d0, d1)`.
pub fn control_input(
    flock: &FlockState,
    agent_index: usize,
    p: &ControlParams,
) -> Result<Vec2, DistanceBoundViolation> {
    let me = &flock.agents[agent_index];
    let dispersion = velocity_dispersion(flock);
    let mut u = Vec2::ZERO;
    for (j, other) in flock.agents.iter().enumerate() {
        if j == agent_index {
            continue;
        }
        let sq = squared_distance(me.position, other.position);
        let attach = |e: DistanceBoundViolation| e.with_pair(agent_index, j);
        u += alignment_weight(sq, p) * (other.velocity - me.velocity);
        let apart = me.position - other.position;
        u += (dispersion * repulsion_kernel(sq, p).map_err(attach)?) * apart;
        u += (dispersion * cohesion_kernel(sq, p).map_err(attach)?) * -apart;
    }
    Ok(u)
}

/// Acceleration commanded by one of the continuous comparison baselines.
///
/// * `Model2CuckerSmale`: the alignment term alone.
/// * `Model3CuckerDong`: alignment plus raw repulsion — no dispersion
///   regulator and no cohesion kernel, so only the collision bound is
///   guarded.
/// * `Proposed` is accepted for convenience and forwards to
///   [`control_input`].
///
/// # Panics
///
/// Panics for `Model1Vicsek`: that baseline is a discrete heading update,
/// not an acceleration law, and is handled by the simulation loop.
pub fn baseline_control_input(
    kind: ControlLawKind,
    flock: &FlockState,
    agent_index: usize,
    p: &ControlParams,
) -> Result<Vec2, DistanceBoundViolation> {
    let me = &flock.agents[agent_index];
    match kind {
        ControlLawKind::Proposed => control_input(flock, agent_index, p),
        ControlLawKind::Model1Vicsek => {
            panic!("Model1Vicsek is a discrete update law; it has no acceleration form")
        }
        ControlLawKind::Model2CuckerSmale => {
            let mut u = Vec2::ZERO;
            for (j, other) in flock.agents.iter().enumerate() {
                if j == agent_index {
                    continue;
                }
                let sq = squared_distance(me.position, other.position);
                u += alignment_weight(sq, p) * (other.velocity - me.velocity);
            }
            Ok(u)
        }
        ControlLawKind::Model3CuckerDong => {
            let mut u = Vec2::ZERO;
            for (j, other) in flock.agents.iter().enumerate() {
                if j == agent_index {
                    continue;
                }
                let sq = squared_distance(me.position, other.position);
                u += alignment_weight(sq, p) * (other.velocity - me.velocity);
                let f0 = repulsion_kernel(sq, p).map_err(|e| e.with_pair(agent_index, j))?;
                u += f0 * (me.position - other.position);
            }
            Ok(u)
        }
    }
}
