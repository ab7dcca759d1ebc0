//! Control-law parameters, actuator limits, and law selection.

use crate::error::{BoundSide, ParamError};

/// Parameters of the distance-bounded flocking law and its baselines.
///
/// Pairwise interactions are expressed in *squared* distance: `d0` and `d1`
/// bound the admissible squared separation, and both interaction kernels
/// take the squared distance as their argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlParams {
    /// Offset inside the alignment weight denominator.
    pub sigma: f64,
    /// Decay exponent of the alignment weight. Values at or below `1/2`
    /// keep the alignment influence long-ranged enough to guarantee
    /// velocity consensus.
    pub beta: f64,
    /// Integer exponent of the repulsion/cohesion kernels.
    pub theta: u32,
    /// Gain multiplying every alignment weight (configuration key `K`).
    pub gain: f64,
    /// Lower bound on pairwise squared distance (collision avoidance).
    pub d0: f64,
    /// Upper bound on pairwise squared distance (cohesion).
    pub d1: f64,
    /// Cutoff that moves the pair potential's zero point to `d1 - delta`,
    /// keeping it finite.
    pub delta: f64,
}

impl Default for ControlParams {
    /// Parameter set used by the bundled three-agent scenario.
    fn default() -> Self {
        Self {
            sigma: 1.0,
            beta: 0.5,
            theta: 2,
            gain: 1.0,
            d0: 1.0,
            d1: 2.25,
            delta: 1e-6,
        }
    }
}

impl ControlParams {
    /// Checks positivity, bound ordering, and cutoff size.
    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, value) in [
            ("sigma", self.sigma),
            ("beta", self.beta),
            ("K", self.gain),
            ("d0", self.d0),
            ("d1", self.d1),
            ("delta", self.delta),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ParamError::NotPositive { name, value });
            }
        }
        if self.theta == 0 {
            return Err(ParamError::ExponentZero { theta: self.theta });
        }
        if self.d0 >= self.d1 {
            return Err(ParamError::BoundsOutOfOrder {
                d0: self.d0,
                d1: self.d1,
            });
        }
        let window = self.d1 - self.d0;
        if self.delta >= window {
            return Err(ParamError::CutoffTooLarge {
                delta: self.delta,
                window,
            });
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus law-specific restrictions.
    ///
    /// The bounded law additionally rejects odd kernel exponents: with an
    /// odd `theta` the cohesion kernel `(sq - d1)^-theta` is negative inside
    /// the admissible window and would push agents apart instead of holding
    /// them together.
    pub fn validate_for(&self, law: ControlLawKind) -> Result<(), ParamError> {
        self.validate()?;
        if law == ControlLawKind::Proposed && self.theta % 2 == 1 {
            return Err(ParamError::ExponentOdd { theta: self.theta });
        }
        Ok(())
    }

    /// Non-fatal observations about the parameter choice.
    pub fn warnings(&self) -> Vec<ParamWarning> {
        let mut out = Vec::new();
        if self.beta > 0.5 {
            out.push(ParamWarning::ShortRangedAlignment { beta: self.beta });
        }
        out
    }
}

/// Advisory note about a parameter choice that is accepted but weakens the
/// law's guarantees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamWarning {
    /// `beta > 1/2` makes the alignment weight decay fast enough that
    /// velocity consensus is no longer guaranteed for arbitrary initial
    /// conditions.
    ShortRangedAlignment {
        /// The accepted decay exponent.
        beta: f64,
    },
}

impl std::fmt::Display for ParamWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamWarning::ShortRangedAlignment { beta } => write!(
                f,
                "beta = {beta} exceeds 1/2; alignment decays fast and velocity \
                 consensus is not guaranteed for all initial conditions"
            ),
        }
    }
}

/// Acceleration and speed limits of the actuators.
///
/// Disabled by default: the bounded law is analysed without saturation, and
/// the bundled scenarios keep it off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturationLimits {
    /// Maximum acceleration magnitude (m/s²).
    pub max_acceleration: f64,
    /// Maximum speed (m/s).
    pub max_speed: f64,
    /// Whether the limits are applied at all.
    pub enabled: bool,
}

impl Default for SaturationLimits {
    fn default() -> Self {
        Self {
            max_acceleration: 2.5,
            max_speed: 0.5,
            enabled: false,
        }
    }
}

impl SaturationLimits {
    /// Checks that the limits are positive and finite.
    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, value) in [
            ("limits.max_acceleration", self.max_acceleration),
            ("limits.max_speed", self.max_speed),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ParamError::NotPositive { name, value });
            }
        }
        Ok(())
    }
}

/// Which control law governs the flock.
///
/// The three baselines are classic flocking laws the bounded law is
/// compared against; they share parameters with it where the structure
/// allows, so differences in behaviour come from the law, not the tuning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControlLawKind {
    /// Distance-bounded law: alignment plus dispersion-scaled repulsion and
    /// cohesion, keeping every pairwise squared distance inside `(d0, d1)`.
    Proposed,
    /// Vicsek-style discrete baseline: agents move at a common constant
    /// speed and periodically adopt the mean heading of their
    /// neighbourhood.
    Model1Vicsek,
    /// Cucker–Smale alignment-only baseline using the same alignment
    /// weights as the bounded law, with no position feedback.
    Model2CuckerSmale,
    /// Cucker–Dong-style baseline: alignment plus unscaled short-range
    /// repulsion; no cohesion term and no dispersion regulator.
    Model3CuckerDong,
}

impl ControlLawKind {
    /// All laws in the order used for comparison runs and reports.
    pub const ALL: [ControlLawKind; 4] = [
        ControlLawKind::Proposed,
        ControlLawKind::Model1Vicsek,
        ControlLawKind::Model2CuckerSmale,
        ControlLawKind::Model3CuckerDong,
    ];

    /// Stable identifier used for CLI arguments, file names, and reports.
    pub fn label(self) -> &'static str {
        match self {
            ControlLawKind::Proposed => "proposed",
            ControlLawKind::Model1Vicsek => "model1",
            ControlLawKind::Model2CuckerSmale => "model2",
            ControlLawKind::Model3CuckerDong => "model3",
        }
    }

    /// True for the discrete-time law that bypasses continuous integration.
    pub fn is_discrete(self) -> bool {
        self == ControlLawKind::Model1Vicsek
    }

    /// Whether a simulation governed by this law stops when a pairwise
    /// distance crosses the given bound.
    ///
    /// The bounded law treats either crossing as a broken invariant: its
    /// kernels are undefined past the bounds. The repulsion baseline only
    /// guards the collision side. The remaining baselines have no distance
    /// feedback at all, so their runs continue and the violation is merely
    /// recorded.
    pub fn halts_on(self, side: BoundSide) -> bool {
        match self {
            ControlLawKind::Proposed => true,
            ControlLawKind::Model3CuckerDong => side == BoundSide::Lower,
            ControlLawKind::Model1Vicsek | ControlLawKind::Model2CuckerSmale => false,
        }
    }
}

impl std::fmt::Display for ControlLawKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for ControlLawKind {
    type Err = UnknownLaw;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "proposed" => Ok(ControlLawKind::Proposed),
            "model1" | "vicsek" => Ok(ControlLawKind::Model1Vicsek),
            "model2" | "cucker-smale" => Ok(ControlLawKind::Model2CuckerSmale),
            "model3" | "cucker-dong" => Ok(ControlLawKind::Model3CuckerDong),
            _ => Err(UnknownLaw(s.to_owned())),
        }
    }
}

/// An unrecognised control-law name.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown control law `{0}`; expected proposed, model1, model2, or model3")]
pub struct UnknownLaw(pub String);
