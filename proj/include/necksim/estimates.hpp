#pragma once

#include "necksim/curvature.hpp"
#include "necksim/geometry.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace necksim {

struct Trajectory;

/// One row of the estimate monitors. Sups and infs run over nodes with
/// positive area weight.
struct MonitorSample {
    double t = 0.0;
    double supMuOverG = 0.0;       ///< inscribed radius (sharp constant (n-1)(n+2)/4)
    double supHOverG = 0.0;        ///< cylindrical estimate ((n-1)^2(n+2)/4)
    double infLambda1OverG = 0.0;  ///< convexity estimate
    double supLambdaNOverG = 0.0;  ///< largest-eigenvalue bound
    double supGradHOverG2 = 0.0;   ///< gradient estimate
    double supG = 0.0;
    double area = 0.0;
    double minPinchEig = 0.0;      ///< min (βG - λ_n), β from the caller
};

/// Largest arclength derivative of the principal curvatures at each node
/// (meridian direction only; rotational derivatives vanish by symmetry).
/// Meshes use the largest edge difference quotient over the 1-ring.
std::vector<double> curvatureGradientNorms(const FlowState& state);

/// Requires state.mu. Throws TwoConvexityError when any node is outside the cone.
MonitorSample monitors(const FlowState& state, const VelocityParams& params, double beta);
MonitorSample monitors(const FlowState& state, const VelocityParams& params);

struct LevelFunctionParams {
    double sigma = 0.05;
    double delta = 0.5;
    double k = 0.0;
    double p = 10.0;
};

void validateLevelParams(const LevelFunctionParams& params);

/// f = G^{σ-1} (μ - ((n-1)(n+2)/4 + δ) G) - k per node.
std::vector<double> levelFunction(const FlowState& state, const LevelFunctionParams& level,
                                  const VelocityParams& params);

/// Σ_nodes max(f, 0)^p · areaWeight.
double lpIntegral(const FlowState& state, std::span<const double> f, double p);

/// A(k): trapezoid-in-time integral of the area of {f_{σ,k} >= 0} over the
/// trajectory's snapshots, for each k (returned in input order).
std::vector<std::pair<double, double>> aOfK(const Trajectory& traj, const LevelFunctionParams& level,
                                            std::span<const double> ks, const VelocityParams& params);

/// Level d past which any nonincreasing φ with φ(h) <= C (h-k)^{-α} φ(k)^γ
/// (h > k >= k0) vanishes: d = (C φ0^{γ-1} 2^{αγ/(γ-1)})^{1/α}.
/// Throws IterationDivergesError for γ <= 1.
double stampacchiaVanishingLevel(double alpha, double gamma, double C, double k0, double phi0);

struct PinchReport {
    double beta = 0.0;
    std::vector<double> times;
    std::vector<double> minEig; ///< min over nodes of βG - λ_n, per snapshot
    std::vector<double> supG;
    std::optional<double> firstViolation;
};

inline constexpr double kPinchTolerance = 1e-2;

/// Tracks the smallest eigenvalue βG - λ_n of u = βG g - h along a
/// trajectory; a violation is minEig < -1e-2 · supG.
PinchReport maxPrincipleCheck(const Trajectory& traj, double beta, const VelocityParams& params);

/// Empirical constants for one δ: each is the exact sup over the snapshots
/// and nodes considered.
struct FittedConstants {
    double delta = 0.0;
    double inscribed = 0.0;   ///< C_1: sup μ - ((n-1)(n+2)/4 + δ) G
    double cylindrical = 0.0; ///< C:   sup H - ((n-1)^2(n+2)/4 + δ) G
    double convexity = 0.0;   ///< K_1: sup -λ_1 - δ G
    double largest = 0.0;     ///< C_0: sup λ_n - ((n-1)(n+2)/4 + δ) G
};

/// Fits over snapshots [first, last) of the trajectory (all when last == 0).
std::vector<FittedConstants> fitConstants(const Trajectory& traj, std::span<const double> deltaGrid,
                                          const VelocityParams& params, std::size_t first = 0,
                                          std::size_t last = 0);

/// C_# = sup |∇h| / G^2 over nodes with G >= gThreshold.
double fitGradientConstant(const Trajectory& traj, double gThreshold, const VelocityParams& params);

} // namespace necksim
