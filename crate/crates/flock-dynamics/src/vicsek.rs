//! Discrete heading-consensus update used by the `Model1Vicsek` baseline.
//!
//! Agents move at a common constant speed. At fixed wall-clock intervals
//! each agent synchronously adopts the direction of the summed unit
//! headings of all agents within a fixed radius (itself included, with
//! zero noise). Between updates, positions advance along the current
//! velocities at the integrator's step size.

use flock_core::{squared_distance, FlockState, Vec2};

/// Neighbourhood radius (m) of the heading average.
pub const INTERACTION_RADIUS: f64 = 1.5;

/// Wall-clock period (s) between heading updates. Positions are advanced
/// every integrator step; headings only change at multiples of this
/// interval.
pub const HEADING_UPDATE_INTERVAL: f64 = 1.0;

/// True when `t` sits on a heading-update instant (a positive multiple of
/// the interval, matched with a quarter-step tolerance so accumulated
/// float time cannot miss it).
pub(crate) fn heading_update_due(t: f64, dt: f64) -> bool {
    let m = (t / HEADING_UPDATE_INTERVAL).round();
    m >= 1.0 && (t - m * HEADING_UPDATE_INTERVAL).abs() <= dt / 4.0
}

/// New velocities for all agents after one synchronous heading update.
///
/// Every non-leader agent takes the direction of the summed unit headings
/// of the agents (leader included) within [`INTERACTION_RADIUS`], scaled
/// to `common_speed`. The leader's velocity is returned unchanged; agents
/// whose neighbourhood sums to a zero vector keep their current heading.
pub(crate) fn updated_velocities(
    state: &FlockState,
    leader: Option<usize>,
    common_speed: f64,
) -> Vec<Vec2> {
    let radius_sq = INTERACTION_RADIUS * INTERACTION_RADIUS;
    let k = state.len();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let me = &state.agents[i];
        if leader == Some(i) {
            out.push(me.velocity);
            continue;
        }
        let mut sum = Vec2::ZERO;
        for j in 0..k {
            let other = &state.agents[j];
            if squared_distance(me.position, other.position) > radius_sq {
                continue;
            }
            let speed = other.velocity.norm();
            if speed > 0.0 {
                sum += other.velocity / speed;
            }
        }
        let direction = if sum.norm() > 0.0 {
            sum / sum.norm()
        } else if me.velocity.norm() > 0.0 {
            me.velocity / me.velocity.norm()
        } else {
            out.push(Vec2::ZERO);
            continue;
        };
        out.push(common_speed * direction);
    }
    out
}
