#pragma once

#include "necksim/curvature.hpp"
#include "necksim/flow.hpp"
#include "necksim/geometry.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace necksim {

/// One scalar comparison of a verification suite.
struct Check {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// |actual - expected| <= tol.
Check checkNear(std::string name, double expected, double actual, double tol);
/// actual <= bound + tol.
Check checkAtMost(std::string name, double bound, double actual, double tol = 0.0);
/// actual >= bound - tol.
Check checkAtLeast(std::string name, double bound, double actual, double tol = 0.0);

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const;
    /// The check with the largest violation, or the last check when all pass.
    const Check& headline() const;
};

/// Uniform double in [lo, hi) from the top 53 bits of one engine draw;
/// identical on every platform.
double uniformDouble(std::mt19937_64& rng, double lo, double hi);

/// Random sorted λ in [lo, hi]^n with λ_1 + λ_2 - 2κ >= minMargin.
PrincipalCurvatures randomTwoConvex(std::mt19937_64& rng, int n, double kappa, double lo = -1.0, double hi = 3.0,
                                    double minMargin = 0.05);

/// Closed profiles used as non-model test shapes: a prolate or oblate
/// ellipsoid, and the peanut ρ(θ) = 1 + eps cos 2θ. Uniform in the polar angle.
ProfileCurve ellipsoidProfile(int n, double axial, double radial, std::size_t N);
ProfileCurve peanutProfile(int n, double eps, std::size_t N);

/// log φ(k_m), m = 0..steps, for the extremal sequence of the Stampacchia
/// recursion φ(k_{m+1}) = C (k_{m+1} - k_m)^{-α} φ(k_m)^γ with
/// k_m = k0 + level (1 - 2^{-m}) and φ(k0) = phi0. Evaluated in log space.
/// Stops early (shorter result) once φ exceeds phi0, i.e. the iteration no
/// longer forces decay, or once log φ reaches -inf (φ has vanished even in
/// log space).
std::vector<double> stampacchiaExtremalLog(double alpha, double gamma, double C, double phi0, double level,
                                           std::size_t steps);

struct AcceptanceOptions {
    std::uint64_t seed = 20240611;
    std::size_t neckNodes = 512;
};

/// The neck run shared by the trend, pinching and level-set criteria:
/// n = 3, a = 0.5, b = 0.3, L = 4, stopped once the waist has fallen by 4.
struct NeckRun {
    Trajectory traj;
    double seconds = 0.0;
};

NeckRun runAcceptanceNeck(std::size_t nodes);

CriterionResult sharpCylinderRatio();
CriterionResult cylindricalConstant();
CriterionResult umbilicRatio();
CriterionResult exactSolutionConvergence();
CriterionResult gradientCheck(std::uint64_t seed);
CriterionResult concavityCheck(std::uint64_t seed);
CriterionResult azimuthalReduction(std::uint64_t seed);
CriterionResult neckSharpnessTrend(const NeckRun& neck);
CriterionResult pinchPreservation(const NeckRun& neck);
CriterionResult stampacchiaOracle(std::uint64_t seed);
CriterionResult levelSetDiagnostics(const NeckRun& neck);
CriterionResult meshRecovery();

/// Runs all twelve criteria in order.
std::vector<CriterionResult> runAcceptance(const AcceptanceOptions& options = {});

} // namespace necksim
