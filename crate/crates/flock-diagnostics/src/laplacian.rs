//! Graph-Laplacian form of the flock dynamics.
//!
//! The pairwise law has an equivalent compact form
//! `v̇ = -L_a v + Λ(v) L_k x`, where `L_a` is the Laplacian of the
//! alignment weights and `L_k` the Laplacian of the kernel difference
//! `f0 - f1`. This module builds both matrices and evaluates the compact
//! form, which the test suite cross-checks against the pairwise sum.

use flock_core::{
    alignment_weight, cohesion_kernel, repulsion_kernel, squared_distance, velocity_dispersion,
    ControlParams, DistanceBoundViolation, FlockState, Vec2,
};
use nalgebra::DMatrix;

/// The two graph Laplacians of the flock's interaction weights.
///
/// Both are symmetric with zero row sums. Off-diagonals of `alignment` are
/// `-a_ij < 0`; off-diagonals of `kernel_diff` are `-(f0_ij - f1_ij)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianPair {
    /// Laplacian of the alignment weights `a_ij`.
    pub alignment: DMatrix<f64>,
    /// Laplacian of the kernel difference `f0 - f1` per pair.
    pub kernel_diff: DMatrix<f64>,
}

/// Builds both Laplacians for the current agent positions.
///
/// # Errors
///
/// Propagates [`DistanceBoundViolation`] (with the pair attached) when any
/// pairwise squared distance is outside `(d0, d1)`.
pub fn build_laplacians(
    flock: &FlockState,
    p: &ControlParams,
) -> Result<LaplacianPair, DistanceBoundViolation> {
    let k = flock.len();
    let mut alignment = DMatrix::zeros(k, k);
    let mut kernel_diff = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in (i + 1)..k {
            let sq = squared_distance(flock.agents[i].position, flock.agents[j].position);
            let attach = |e: DistanceBoundViolation| e.with_pair(i, j);
            let a = alignment_weight(sq, p);
            let f = repulsion_kernel(sq, p).map_err(attach)?
                - cohesion_kernel(sq, p).map_err(attach)?;
            alignment[(i, j)] = -a;
            alignment[(j, i)] = -a;
            alignment[(i, i)] += a;
            alignment[(j, j)] += a;
            kernel_diff[(i, j)] = -f;
            kernel_diff[(j, i)] = -f;
            kernel_diff[(i, i)] += f;
            kernel_diff[(j, j)] += f;
        }
    }
    Ok(LaplacianPair { alignment, kernel_diff })
}

/// Applies a `k×k` matrix blockwise to a list of `k` planar vectors,
/// i.e. multiplies by `M ⊗ I₂`.
pub fn apply_blockwise(matrix: &DMatrix<f64>, vectors: &[Vec2]) -> Vec<Vec2> {
    let k = vectors.len();
    assert_eq!(matrix.nrows(), k, "matrix size must match vector count");
    assert_eq!(matrix.ncols(), k, "matrix must be square");
    let mut out = vec![Vec2::ZERO; k];
    for i in 0..k {
        let mut acc = Vec2::ZERO;
        for j in 0..k {
            acc += matrix[(i, j)] * vectors[j];
        }
        out[i] = acc;
    }
    out
}

/// Stacked accelerations via the compact form `-L_a v + Λ(v) L_k x`.
///
/// Mathematically identical to calling the pairwise law per agent; kept as
/// an independent formulation for cross-checking.
///
/// # Errors
///
/// Propagates kernel bound violations from [`build_laplacians`].
pub fn matrix_form_accelerations(
    flock: &FlockState,
    p: &ControlParams,
) -> Result<Vec<Vec2>, DistanceBoundViolation> {
    let pair = build_laplacians(flock, p)?;
    let dispersion = velocity_dispersion(flock);
    let velocities: Vec<Vec2> = flock.agents.iter().map(|a| a.velocity).collect();
    let positions: Vec<Vec2> = flock.agents.iter().map(|a| a.position).collect();
    let damping = apply_blockwise(&pair.alignment, &velocities);
    let forcing = apply_blockwise(&pair.kernel_diff, &positions);
    Ok(damping
        .into_iter()
        .zip(forcing)
        .map(|(d, f)| -d + dispersion * f)
        .collect())
}

#[cfg(test)]
// Reference values are written with all 17 significant digits so they
// stay bit-exact even where fewer digits would round-trip.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use flock_core::AgentState;

    #[test]
    fn two_agent_alignment_laplacian() {
        let flock = FlockState::new(
            0.0,
            vec![
                AgentState::new(Vec2::ZERO, Vec2::ZERO),
                AgentState::new(Vec2::new(1.25, 0.0), Vec2::ZERO),
            ],
        );
        let p = ControlParams::default();
        let pair = build_laplacians(&flock, &p).unwrap();
        let a = 6.24695047554424288e-1; // alignment weight at sq = 1.5625
        assert_abs_diff_eq!(pair.alignment[(0, 0)], a, epsilon = 1e-15);
        assert_abs_diff_eq!(pair.alignment[(0, 1)], -a, epsilon = 1e-15);
        assert_abs_diff_eq!(pair.alignment[(1, 0)], -a, epsilon = 1e-15);
        assert_abs_diff_eq!(pair.alignment[(1, 1)], a, epsilon = 1e-15);

        let f = 256.0 / 81.0 - 256.0 / 121.0; // f0 - f1 at sq = 1.5625
        assert_abs_diff_eq!(pair.kernel_diff[(0, 0)], f, epsilon = 1e-12);
        assert_abs_diff_eq!(pair.kernel_diff[(0, 1)], -f, epsilon = 1e-12);
    }

    #[test]
    fn row_sums_vanish() {
        let flock = FlockState::new(
            0.0,
            vec![
                AgentState::new(Vec2::new(0.1, -0.2), Vec2::ZERO),
                AgentState::new(Vec2::new(1.35, 0.0), Vec2::ZERO),
                AgentState::new(Vec2::new(0.7, 1.1), Vec2::ZERO),
            ],
        );
        let pair = build_laplacians(&flock, &ControlParams::default()).unwrap();
        for m in [&pair.alignment, &pair.kernel_diff] {
            for i in 0..3 {
                let row_sum: f64 = (0..3).map(|j| m[(i, j)]).sum();
                assert_abs_diff_eq!(row_sum, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn out_of_bounds_pair_is_reported() {
        let flock = FlockState::new(
            0.0,
            vec![
                AgentState::new(Vec2::ZERO, Vec2::ZERO),
                AgentState::new(Vec2::new(1.2, 0.0), Vec2::ZERO),
                AgentState::new(Vec2::new(3.0, 0.0), Vec2::ZERO),
            ],
        );
        let err = build_laplacians(&flock, &ControlParams::default()).unwrap_err();
        assert_eq!(err.pair, Some((0, 2)));
        assert_eq!(err.side, flock_core::BoundSide::Upper);
    }

    #[test]
    fn blockwise_identity_application() {
        let m = DMatrix::identity(2, 2);
        let vs = [Vec2::new(1.0, 2.0), Vec2::new(-3.0, 4.0)];
        assert_eq!(apply_blockwise(&m, &vs), vs.to_vec());
    }
}
