#pragma once

#include "necksim/geometry.hpp"

#include <cstddef>

namespace necksim {

/// Opposite nodes closer than this many mean grid spacings (in arclength)
/// are left to the local λ_n branch.
inline constexpr double kNearExclusionSpacings = 3.0;

/// μ for a hypersurface of revolution, μ_i = max(λ_n, sup_y Q(x_i, y)) with
/// Q(x, y) = -2<y - x, ν(x)> / |y - x|^2.
///
/// For a fixed opposite node j, Q restricted to the parallel circle through
/// y_j is a ratio of two affine functions of c = cos φ, so it is monotone in
/// c and its supremum sits at c = +1 (same meridian) or c = -1 (opposite
/// meridian). Periodic curves also see the neighbouring period images.
MuField muProfile(const FlowState& state);

/// Sup of Q at node i over all admissible opposite nodes and `phiSamples`
/// uniformly spaced azimuths, without the azimuthal reduction. Validation
/// oracle for muProfile's two-point branch.
double muAzimuthBruteforce(const FlowState& state, std::size_t i, std::size_t phiSamples);

enum class MeshMuBackend { BruteForce, Pruned };

/// μ for a closed triangle mesh. Vertices inside the 2-ring of x (the curvature
/// fit stencil) are excluded. The pruned backend walks a bounding-box tree
/// and skips boxes farther than 2/μ_best, which is exact because Q <= 2/|y-x|;
/// its `twoPoint` entries are exact only where the two-point branch wins.
MuField muMesh(const FlowState& state, MeshMuBackend backend = MeshMuBackend::Pruned);

/// Dispatches on the surface type.
MuField computeMu(const FlowState& state);

/// Computes μ and stores it in state.mu.
void attachMu(FlowState& state);

} // namespace necksim
