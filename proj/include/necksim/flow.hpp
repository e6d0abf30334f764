#pragma once

#include "necksim/curvature.hpp"
#include "necksim/estimates.hpp"
#include "necksim/geometry.hpp"
#include "necksim/shapes.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace necksim {

struct FlowConfig {
    double kappa = 0.0;
    double dtSafety = 0.2;
    double maxCurvatureCap = 1e4;
    /// Stop once the waist (periodic) or the largest radius (closed) drops below this.
    double minRadiusFloor = 1e-3;
    double tEnd = 1.0;
    long resampleEvery = 50;
    double snapshotEvery = 0.05;
    /// β for the pinch-tensor column of the monitors; <= 0 selects (n-1)(n+2)/4.
    double beta = 0.0;
    bool monitors = true;
    long maxSteps = 10'000'000;
};

void validateFlowConfig(const FlowConfig& config);

enum class StopReason { TEnd, CurvatureCap, RadiusFloor, TwoConvexityLost };

std::string_view stopReasonName(StopReason reason);

struct Trajectory {
    std::vector<FlowState> snapshots; ///< μ attached to each
    std::vector<MonitorSample> series;
    StopReason stop = StopReason::TEnd;
    long steps = 0;
};

/// One second-order step: two Euler half steps combined with one full Euler
/// step by Richardson extrapolation. Points move by -dt G_κ ν.
/// Throws TwoConvexityError (with the node) if the result leaves the cone.
FlowState step(const FlowState& state, double dt, const VelocityParams& params);

/// min(safety h_min^2 / max ∂G/∂λ_meridian, safety h_min / max G).
double adaptiveDt(const FlowState& state, const FlowConfig& config);

/// Characteristic radius used by the radius floor.
double characteristicRadius(const FlowState& state);

/// Steps until tEnd or a stop condition, resampling periodic/closed profiles
/// every resampleEvery steps at constant node count, snapshotting at
/// multiples of snapshotEvery and at the stop.
Trajectory run(const FlowState& initial, const FlowConfig& config);

/// Spatially homogeneous evolution of the principal curvatures,
/// dλ_j/dt = G_κ λ_j^2, integrated at relative tolerance 1e-12.
PrincipalCurvatures evolveHomogeneous(const PrincipalCurvatures& lambda0, const VelocityParams& params,
                                      double t);

/// Integrates the eigenvalue ODE of a sphere or cylinder up to tEnd and
/// returns the largest |dG/dt - Σ_i (∂G/∂λ_i) λ_i^2 G| along it, dG/dt taken
/// by a five-point difference of the integrated solution.
double homogeneousOdeCheck(const ModelShape& shape, const VelocityParams& params, double tEnd);

} // namespace necksim
