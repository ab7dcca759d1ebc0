//! Core types and control laws for distance-bounded planar flocking.
//!
//! A flock of `k ≥ 2` agents with double-integrator dynamics is driven by a
//! decentralized acceleration law built from three pairwise terms —
//! velocity alignment, short-range repulsion, and long-range cohesion. The
//! repulsion and cohesion kernels diverge at configurable bounds `(d0, d1)`
//! on the pairwise *squared* distance, and are scaled by the flock's
//! velocity dispersion, so the law simultaneously avoids collisions, keeps
//! the group together, and brings all velocities to a common value.
//!
//! Besides the bounded law this crate carries the three classic baselines
//! it is compared against (a discrete heading-consensus rule, an
//! alignment-only law, and an alignment-plus-repulsion law), sharing
//! parameters so behavioural differences are attributable to the law
//! itself.
//!
//! Everything here is a pure function over immutable state; time
//! integration and scenario handling live in the companion crates.

mod error;
mod law;
mod params;
mod state;
mod vec2;

pub use error::{BoundSide, DistanceBoundViolation, ParamError};
pub use law::{
    alignment_weight, baseline_control_input, cohesion_kernel, control_input, repulsion_kernel,
    squared_distance, velocity_dispersion,
};
pub use params::{ControlLawKind, ControlParams, ParamWarning, SaturationLimits, UnknownLaw};
pub use state::{AgentState, FlockState};
pub use vec2::{Vec2, Vector};
