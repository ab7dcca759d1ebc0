//! Analysis-side quantities and runtime monitors for the bounded flocking
//! law.
//!
//! Where `flock-core` evaluates the law agent by agent, this crate carries
//! the quantities its guarantees are stated in:
//!
//! * the graph-Laplacian compact form of the dynamics (an independent
//!   formulation used for cross-checking),
//! * the mean/residual decomposition of the stacked velocity,
//! * the closed-form energy (residual norm plus pairwise barrier
//!   potentials), and
//! * monitors that turn the guarantees — energy decrease, mean-velocity
//!   conservation, bound-keeping, dispersion convergence — into per-run
//!   verdicts.

mod energy;
mod laplacian;
mod monitor;
mod projection;
mod record;

pub use energy::{energy, pair_potential};
pub use laplacian::{apply_blockwise, build_laplacians, matrix_form_accelerations, LaplacianPair};
pub use monitor::{monitor, CheckKind, MonitorConfig, MonitorVerdict, Sample};
pub use projection::{project_velocity, VelocityDecomposition};
pub use record::{diagnose, DiagnosticsRecord};
