//! Error types shared across the workspace.

use thiserror::Error;

/// Which distance bound a pair of agents crossed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundSide {
    /// The pair came closer than the collision-avoidance bound.
    Lower,
    /// The pair drifted further apart than the cohesion bound.
    Upper,
}

impl std::fmt::Display for BoundSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundSide::Lower => f.write_str("lower"),
            BoundSide::Upper => f.write_str("upper"),
        }
    }
}

/// A pairwise squared distance left the open interval the control law is
/// defined on.
///
/// The interaction kernels diverge at the bounds, so any evaluation outside
/// the open interval is reported as a violation rather than returning a
/// meaningless (infinite or sign-flipped) force. Pair and time are attached
/// by callers that know them; kernel-level checks leave them unset.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub struct DistanceBoundViolation {
    /// Which bound was crossed.
    pub side: BoundSide,
    /// The offending squared distance.
    pub sq_dist: f64,
    /// Agent indices `(i, j)` with `i < j`, when known.
    pub pair: Option<(usize, usize)>,
    /// Simulation time of the violation, when known.
    pub time: Option<f64>,
}

impl DistanceBoundViolation {
    /// Violation of the lower (collision) bound.
    pub fn lower(sq_dist: f64) -> Self {
        Self {
            side: BoundSide::Lower,
            sq_dist,
            pair: None,
            time: None,
        }
    }

    /// Violation of the upper (cohesion) bound.
    pub fn upper(sq_dist: f64) -> Self {
        Self {
            side: BoundSide::Upper,
            sq_dist,
            pair: None,
            time: None,
        }
    }

    /// Attaches the offending agent pair, normalized to `i < j`.
    pub fn with_pair(mut self, i: usize, j: usize) -> Self {
        self.pair = Some((i.min(j), i.max(j)));
        self
    }

    /// Attaches the simulation time of the violation.
    pub fn at_time(mut self, time: f64) -> Self {
        self.time = Some(time);
        self
    }
}

impl std::fmt::Display for DistanceBoundViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "squared distance {} crossed the {} bound",
            self.sq_dist, self.side
        )?;
        if let Some((i, j)) = self.pair {
            write!(f, " for pair ({i}, {j})")?;
        }
        if let Some(t) = self.time {
            write!(f, " at t = {t} s")?;
        }
        Ok(())
    }
}

/// Rejected control-law parameters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    /// A parameter that must be strictly positive and finite is not.
    #[error("parameter `{name}` must be positive and finite, got {value}")]
    NotPositive {
        /// Parameter name as exposed in configuration.
        name: &'static str,
        /// Rejected value.
        value: f64,
    },
    /// The distance bounds are not ordered.
    #[error("distance bounds must satisfy d0 < d1, got d0 = {d0}, d1 = {d1}")]
    BoundsOutOfOrder {
        /// Lower squared-distance bound.
        d0: f64,
        /// Upper squared-distance bound.
        d1: f64,
    },
    /// The cutoff would move the potential's reference point out of the
    /// interval the kernels are defined on.
    #[error("cutoff delta = {delta} must be smaller than the bound window d1 - d0 = {window}")]
    CutoffTooLarge {
        /// Rejected cutoff.
        delta: f64,
        /// Width of the admissible squared-distance window.
        window: f64,
    },
    /// The kernel exponent must be a positive integer.
    #[error("kernel exponent theta must be at least 1, got {theta}")]
    ExponentZero {
        /// Rejected exponent.
        theta: u32,
    },
    /// Odd exponents flip the sign of the cohesion kernel inside the
    /// admissible window, so the bounded law rejects them.
    #[error(
        "kernel exponent theta = {theta} is odd; the bounded law needs an even \
         exponent so the cohesion term stays attractive inside the bounds"
    )]
    ExponentOdd {
        /// Rejected exponent.
        theta: u32,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violation_display_includes_context() {
        let v = DistanceBoundViolation::lower(0.81).with_pair(2, 0).at_time(1.25);
        assert_eq!(v.pair, Some((0, 2)));
        let text = v.to_string();
        assert!(text.contains("lower bound"));
        assert!(text.contains("(0, 2)"));
        assert!(text.contains("t = 1.25 s"));
    }

    #[test]
    fn violation_without_context_is_still_readable() {
        let v = DistanceBoundViolation::upper(9.5);
        let text = v.to_string();
        assert!(text.contains("9.5"));
        assert!(text.contains("upper bound"));
        assert!(!text.contains("pair"));
    }
}
