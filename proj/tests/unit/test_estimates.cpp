#include "necksim/errors.hpp"
#include "necksim/estimates.hpp"
#include "necksim/flow.hpp"
#include "necksim/inradius.hpp"
#include "necksim/shapes.hpp"

#include "../support/profiles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace necksim;

namespace {

FlowState withMu(FlowState state) {
    attachMu(state);
    return state;
}

// Snapshots of the exact shrinking solution at the given times.
Trajectory exactTrajectory(ShapeKind kind, std::initializer_list<double> times) {
    Trajectory traj;
    for (double t : times) {
        const ModelShape shape = kind == ShapeKind::Sphere ? ModelShape::sphere(3, exactSphereRadius(3, 1.0, t))
                                                           : ModelShape::cylinder(3, exactCylinderRadius(3, 1.0, t), 4.0);
        FlowState s = withMu(modelState(shape, 128));
        s.t = t;
        traj.snapshots.push_back(std::move(s));
    }
    return traj;
}

const Trajectory& neckTrajectory() {
    static const Trajectory traj = [] {
        FlowConfig config;
        config.tEnd = 1.0;
        config.snapshotEvery = 0.005;
        config.minRadiusFloor = 0.1;
        return run(modelState(ModelShape::cosineNeck(3, 0.5, 0.3, 4.0), 256), config);
    }();
    return traj;
}

} // namespace

TEST(Monitors, ExactCylinder) {
    const MonitorSample m = monitors(withMu(modelState(ModelShape::cylinder(3, 1.0, 4.0), 128)), {});
    EXPECT_NEAR(m.supMuOverG, 2.5, 1e-12);
    EXPECT_NEAR(m.supHOverG, 5.0, 1e-12);
    EXPECT_NEAR(m.infLambda1OverG, 0.0, 1e-12);
    EXPECT_NEAR(m.supLambdaNOverG, 2.5, 1e-12);
    EXPECT_NEAR(m.supGradHOverG2, 0.0, 1e-12);
    EXPECT_NEAR(m.supG, 0.4, 1e-12);
    EXPECT_NEAR(m.minPinchEig, 0.0, 1e-12);
    EXPECT_NEAR(m.area, 4.0 * unitSphereArea(2), 1e-10);
}

TEST(Monitors, ExactSphere) {
    const MonitorSample m = monitors(withMu(modelState(ModelShape::sphere(3, 1.0), 256)), {});
    EXPECT_NEAR(m.supMuOverG, 1.5, 1.5e-3); // μ is a discrete two-point sup
    EXPECT_NEAR(m.supHOverG, 4.5, 1e-12);
    EXPECT_NEAR(m.supLambdaNOverG, 1.5, 1e-12);
    EXPECT_NEAR(m.infLambda1OverG, 1.5, 1e-12);
    EXPECT_NEAR(m.area, unitSphereArea(3), 1e-3);
}

TEST(Monitors, RatiosAreScaleInvariant) {
    const auto base = makeProfileState(test_support::peanutCurve(3, 0.1, 200));
    const auto big = makeProfileState(test_support::scaled(base.profile(), 3.0));
    const MonitorSample a = monitors(withMu(base), {});
    const MonitorSample b = monitors(withMu(big), {});
    EXPECT_NEAR(a.supMuOverG, b.supMuOverG, 1e-9);
    EXPECT_NEAR(a.supHOverG, b.supHOverG, 1e-9);
    EXPECT_NEAR(a.infLambda1OverG, b.infLambda1OverG, 1e-9);
    EXPECT_NEAR(a.supLambdaNOverG, b.supLambdaNOverG, 1e-9);
    EXPECT_NEAR(a.supGradHOverG2, b.supGradHOverG2, 1e-9);
}

TEST(Monitors, RequireMu) {
    EXPECT_THROW(monitors(modelState(ModelShape::sphere(3, 1.0), 64), {}), InvalidInputError);
}

TEST(LevelFunction, ExactCylinderIsNegative) {
    const FlowState s = withMu(modelState(ModelShape::cylinder(3, 1.0, 4.0), 128));
    const LevelFunctionParams level{0.05, 0.5, 0.0, 10.0};
    const auto f = levelFunction(s, level, {});
    for (double v : f) EXPECT_NEAR(v, -0.5 * std::pow(0.4, 0.05), 1e-12);
    EXPECT_EQ(lpIntegral(s, f, 10.0), 0.0);

    const auto f0 = levelFunction(s, {0.05, 0.0, 0.0, 10.0}, {});
    for (double v : f0) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(LevelFunction, ExactSphere) {
    // δ = 0: f = G^σ (n(n-1)/4 - (n-1)(n+2)/4) = -G^σ for n = 3, G = 2/3.
    const FlowState s = withMu(modelState(ModelShape::sphere(3, 1.0), 256));
    const auto f = levelFunction(s, {0.3, 0.0, 0.0, 2.0}, {});
    for (double v : f) EXPECT_NEAR(v, -std::pow(2.0 / 3.0, 0.3), 2e-3);
}

TEST(LpIntegral, UnitFieldGivesArea) {
    const FlowState s = modelState(ModelShape::sphere(3, 1.0), 512);
    const std::vector<double> ones(s.perNode.size(), 1.0);
    EXPECT_NEAR(lpIntegral(s, ones, 10.0), 2.0 * std::numbers::pi * std::numbers::pi, 1e-3);
}

TEST(LpIntegral, HalfPositiveField) {
    const FlowState s = modelState(ModelShape::cylinder(3, 1.0, 4.0), 64);
    std::vector<double> f(s.perNode.size());
    double expected = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = i % 2 == 0 ? 0.25 * static_cast<double>(i) : -1.0;
        // Uniform nodes on a cylinder of radius 1: weight 4π · (4/64).
        if (f[i] > 0.0) expected += f[i] * 4.0 * std::numbers::pi * (4.0 / 64.0);
    }
    EXPECT_NEAR(lpIntegral(s, f, 1.0), expected, 1e-10);
    EXPECT_THROW(lpIntegral(s, f, 0.5), InvalidInputError);
}

TEST(AofK, ExactCylinderVanishes) {
    const Trajectory traj = exactTrajectory(ShapeKind::Cylinder, {0.0, 0.2, 0.4});
    const double ks[] = {0.0, 1.0};
    for (const auto& [k, a] : aOfK(traj, {}, ks, {})) EXPECT_EQ(a, 0.0) << k;
}

TEST(AofK, NonincreasingAndVanishesAboveTheSup) {
    const Trajectory& traj = neckTrajectory();
    const LevelFunctionParams level{0.05, 0.01, 0.0, 10.0};
    double sup = -std::numeric_limits<double>::infinity();
    for (const auto& s : traj.snapshots)
        for (double v : levelFunction(s, level, {})) sup = std::max(sup, v);
    ASSERT_GT(sup, 0.0) << "the neck exceeds the sharp ratio at small δ";

    std::vector<double> ks;
    for (int j = 0; j <= 20; ++j) ks.push_back(sup * j / 16.0);
    const auto a = aOfK(traj, level, ks, {});
    EXPECT_GT(a.front().second, 0.0);
    for (std::size_t j = 1; j < a.size(); ++j) EXPECT_LE(a[j].second, a[j - 1].second);
    for (const auto& [k, v] : a)
        if (k > sup) EXPECT_EQ(v, 0.0) << k;
}

TEST(AofK, TrapezoidInTime) {
    // Two identical cylinders 0.5 apart in time, δ = 0: f vanishes up to rounding,
    // so every node lies above the level k = -1 and A = 0.5 · area.
    Trajectory traj = exactTrajectory(ShapeKind::Cylinder, {0.0, 0.0});
    traj.snapshots[1].t = 0.5;
    const double ks[] = {-1.0};
    const auto a = aOfK(traj, {0.05, 0.0, 0.0, 10.0}, ks, {});
    EXPECT_NEAR(a.front().second, 0.5 * 4.0 * unitSphereArea(2), 1e-10);
}

TEST(Stampacchia, ClosedForm) {
    EXPECT_DOUBLE_EQ(stampacchiaVanishingLevel(2.0, 2.0, 1.0, 0.0, 1.0), 4.0);
    EXPECT_EQ(stampacchiaVanishingLevel(2.0, 2.0, 1.0, 0.0, 0.0), 0.0);
    EXPECT_THROW(stampacchiaVanishingLevel(2.0, 1.0, 1.0, 0.0, 1.0), IterationDivergesError);
    EXPECT_THROW(stampacchiaVanishingLevel(2.0, 0.5, 1.0, 0.0, 1.0), IterationDivergesError);
    // Translating k0 leaves the distance unchanged.
    EXPECT_EQ(stampacchiaVanishingLevel(3.0, 1.5, 2.0, 7.0, 0.3), stampacchiaVanishingLevel(3.0, 1.5, 2.0, 0.0, 0.3));
}

TEST(PinchCheck, ExactSolutionsAreEqualityCases) {
    const PinchReport sphere = maxPrincipleCheck(exactTrajectory(ShapeKind::Sphere, {0.0, 0.2, 0.5}), 1.5, {});
    for (double e : sphere.minEig) EXPECT_NEAR(e, 0.0, 1e-10);
    EXPECT_FALSE(sphere.firstViolation);
    const PinchReport cyl = maxPrincipleCheck(exactTrajectory(ShapeKind::Cylinder, {0.0, 0.5, 1.0}), 2.5, {});
    for (double e : cyl.minEig) EXPECT_NEAR(e, 0.0, 1e-10);
    EXPECT_EQ(cyl.times.size(), 3u);
}

TEST(PinchCheck, GenerousBetaNeverViolates) {
    const PinchReport rep = maxPrincipleCheck(neckTrajectory(), 10.0, {});
    EXPECT_FALSE(rep.firstViolation);
    for (double e : rep.minEig) EXPECT_GT(e, 0.0);
}

TEST(PinchCheck, NeckInitialDataExceedsTheSharpBeta) {
    // At the waist of r = 0.5 - 0.3 cos(πz/2): λ = (-0.3 π²/4, 5, 5), so λ_n/G > 2.5.
    const double lm = -0.3 * std::numbers::pi * std::numbers::pi / 4.0;
    const double G = 1.0 / (2.0 / (lm + 5.0) + 1.0 / 10.0);
    const PinchReport rep = maxPrincipleCheck(neckTrajectory(), 2.5, {});
    EXPECT_NEAR(rep.minEig.front(), 2.5 * G - 5.0, 1e-3);
    EXPECT_EQ(rep.firstViolation, 0.0);
}

TEST(FitConstants, ExactCylinder) {
    const Trajectory traj = exactTrajectory(ShapeKind::Cylinder, {0.0, 0.3, 0.6});
    const double deltas[] = {0.0, 0.1, 0.5};
    const auto fits = fitConstants(traj, deltas, {});
    ASSERT_EQ(fits.size(), 3u);
    EXPECT_NEAR(fits[0].inscribed, 0.0, 1e-12);
    EXPECT_NEAR(fits[0].cylindrical, 0.0, 1e-12);
    EXPECT_NEAR(fits[0].convexity, 0.0, 1e-12);
    for (const auto& f : fits) EXPECT_LE(f.inscribed, 1e-12);
    // sup of -δG is attained at the smallest speed, G = 0.4 at t = 0.
    EXPECT_NEAR(fits[2].inscribed, -0.5 * 0.4, 1e-12);
    EXPECT_THROW(fitConstants(traj, deltas, {}, 2, 2), InvalidInputError);
}

TEST(FitConstants, NonincreasingInDelta) {
    const double deltas[] = {0.0, 0.1, 0.5, 1.0, 2.0};
    const auto fits = fitConstants(neckTrajectory(), deltas, {});
    for (std::size_t j = 1; j < fits.size(); ++j) {
        EXPECT_LE(fits[j].inscribed, fits[j - 1].inscribed);
        EXPECT_LE(fits[j].cylindrical, fits[j - 1].cylindrical);
        EXPECT_LE(fits[j].convexity, fits[j - 1].convexity);
        EXPECT_LE(fits[j].largest, fits[j - 1].largest);
    }
}

TEST(FitConstants, GradientConstant) {
    EXPECT_EQ(fitGradientConstant(exactTrajectory(ShapeKind::Cylinder, {0.0, 0.5}), 0.0, {}), 0.0);
    const double c = fitGradientConstant(neckTrajectory(), 0.0, {});
    EXPECT_GT(c, 0.0);
    EXPECT_TRUE(std::isfinite(c));
    EXPECT_EQ(fitGradientConstant(neckTrajectory(), 1e9, {}), 0.0);
}
