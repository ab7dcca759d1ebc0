//! Actuator limits applied to commanded accelerations and resulting
//! speeds.

use flock_core::{SaturationLimits, Vec2};

/// Caps the commanded acceleration's norm at `max_acceleration`,
/// preserving direction. Identity when the limits are disabled.
pub fn saturate_acceleration(u: Vec2, limits: &SaturationLimits) -> Vec2 {
    if limits.enabled {
        u.clamp_norm(limits.max_acceleration)
    } else {
        u
    }
}

/// Caps a velocity's norm at `max_speed` after an integration step,
/// preserving direction. Identity when the limits are disabled.
pub fn clamp_speed(v: Vec2, limits: &SaturationLimits) -> Vec2 {
    if limits.enabled {
        v.clamp_norm(limits.max_speed)
    } else {
        v
    }
}
