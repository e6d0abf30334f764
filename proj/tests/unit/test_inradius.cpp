#include "necksim/errors.hpp"
#include "necksim/inradius.hpp"
#include "necksim/mesh.hpp"
#include "necksim/shapes.hpp"

#include "../support/profiles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace necksim;
using namespace necksim::test_support;

namespace {

std::vector<FlowState> azimuthShapes() {
    std::vector<FlowState> states;
    states.push_back(makeProfileState(modelState(ModelShape::sphere(3, 1.0), 161).profile()));
    states.push_back(makeProfileState(modelState(ModelShape::cylinder(3, 0.8, 4.0), 96).profile()));
    states.push_back(makeProfileState(modelState(ModelShape::cosineNeck(3, 0.5, 0.3, 4.0), 200).profile()));
    states.push_back(makeProfileState(ellipsoidCurve(3, 1.5, 0.7, 151)));
    states.push_back(makeProfileState(peanutCurve(4, 0.35, 181)));
    return states;
}

} // namespace

TEST(MuProfile, UnitSphere) {
    const auto state = makeProfileState(modelState(ModelShape::sphere(3, 1.0), 256).profile());
    const MuField mu = muProfile(state);
    for (std::size_t i = 0; i < mu.mu.size(); ++i) {
        EXPECT_NEAR(mu.mu[i], 1.0, 1e-3);
        EXPECT_NEAR(mu.twoPoint[i], 1.0, 1e-3);
    }
}

TEST(MuProfile, ProlateEllipsoidEquator) {
    // Prolate ellipsoid: at the equator the inscribed ball has radius b and
    // touches across the axis, so mu equals the rotational curvature 1/b.
    const auto state = makeProfileState(ellipsoidCurve(3, 2.0, 0.5, 201));
    const MuField mu = muProfile(state);
    const std::size_t eq = 100;
    EXPECT_NEAR(mu.mu[eq], 1.0 / 0.5, 1e-3);
    // The excluded neighbourhood keeps the discrete two-point value just below.
    EXPECT_LE(mu.twoPoint[eq], mu.mu[eq]);
    EXPECT_NEAR(mu.twoPoint[eq], 1.0 / 0.5, 2e-2);
}

TEST(MuProfile, CylinderBranchesAgree) {
    const auto state = modelState(ModelShape::cylinder(3, 1.0, 4.0), 256);
    const MuField mu = muProfile(state);
    const double h = 4.0 / 256;
    for (std::size_t i = 0; i < mu.mu.size(); ++i) {
        EXPECT_EQ(mu.mu[i], 1.0);
        EXPECT_EQ(mu.branch[i], MuBranch::Local);
        // Across the axis, the nearest admissible node sits 3h away: 4r/(4r^2 + 9h^2).
        EXPECT_NEAR(mu.twoPoint[i], 4.0 / (4.0 + 9.0 * h * h), 1e-12);
    }
}

TEST(MuProfile, NeckWaist) {
    const auto state = modelState(ModelShape::cosineNeck(3, 0.5, 0.3, 4.0), 512);
    const MuField mu = muProfile(state);
    EXPECT_NEAR(mu.mu[256], 5.0, 1e-9);
    // Dense sampling of the whole parallel circle family reaches the same value.
    EXPECT_NEAR(std::max(muAzimuthBruteforce(state, 256, 720), state.perNode[256].curvatures.largest()), 5.0, 1e-9);
}

TEST(MuProfile, AzimuthalReductionIsExact) {
    std::mt19937_64 rng(31);
    for (const auto& state : azimuthShapes()) {
        const MuField mu = muProfile(state);
        std::uniform_int_distribution<std::size_t> pick(0, state.perNode.size() - 1);
        for (int k = 0; k < 50; ++k) {
            const std::size_t i = pick(rng);
            const double brute = muAzimuthBruteforce(state, i, 4096);
            EXPECT_NEAR(mu.twoPoint[i], brute, 1e-8 * std::max(1.0, std::abs(brute))) << "node " << i;
            EXPECT_NEAR(muAzimuthBruteforce(state, i, 2), mu.twoPoint[i], 1e-13 * std::max(1.0, std::abs(brute)));
        }
    }
}

TEST(MuProfile, DominatesLargestCurvature) {
    for (const auto& state : azimuthShapes()) {
        const MuField mu = muProfile(state);
        for (std::size_t i = 0; i < mu.mu.size(); ++i) {
            EXPECT_GE(mu.mu[i], state.perNode[i].curvatures.largest() - 1e-9);
            EXPECT_GT(mu.mu[i], 0.0);
            if (mu.branch[i] == MuBranch::Local) EXPECT_EQ(mu.witness[i], -1);
        }
    }
}

TEST(MuProfile, ScalesInversely) {
    for (const double c : {0.1, 3.0, 17.0}) {
        const auto base = makeProfileState(peanutCurve(3, 0.3, 121));
        const auto big = makeProfileState(scaled(base.profile(), c));
        const MuField a = muProfile(base), b = muProfile(big);
        for (std::size_t i = 0; i < a.mu.size(); ++i) EXPECT_NEAR(b.mu[i] * c, a.mu[i], 1e-12 * a.mu[i]);
    }
}

TEST(MuProfile, NeedsEightNodes) {
    ProfileCurve c = ellipsoidCurve(3, 1.0, 1.0, 7);
    FlowState s = makeProfileState(c);
    EXPECT_THROW(muProfile(s), InsufficientResolutionError);
}

TEST(MuMesh, Icosphere) {
    const auto state = makeMeshState(makeIcosphere(1.0, 4));
    const MuField mu = muMesh(state);
    for (double m : mu.mu) EXPECT_NEAR(m, 1.0, 5e-2);
}

TEST(MuMesh, PrunedMatchesBruteForce) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int k = 0; k < 20; ++k) {
        TriangleMesh mesh = makeIcosphere(1.0, 2 + k % 2);
        const Eigen::Vector3d axes(u(rng), u(rng), u(rng));
        for (auto& v : mesh.vertices) v = v.cwiseProduct(axes);
        const auto state = makeMeshState(std::move(mesh));
        const MuField brute = muMesh(state, MeshMuBackend::BruteForce);
        const MuField pruned = muMesh(state, MeshMuBackend::Pruned);
        ASSERT_EQ(brute.mu.size(), pruned.mu.size());
        for (std::size_t i = 0; i < brute.mu.size(); ++i) {
            EXPECT_EQ(brute.mu[i], pruned.mu[i]);
            EXPECT_EQ(brute.witness[i], pruned.witness[i]);
            EXPECT_EQ(brute.branch[i], pruned.branch[i]);
        }
    }
}

TEST(MuMesh, SharpBumpUsesLocalBranch) {
    TriangleMesh mesh = makeIcosphere(1.0, 4);
    // Raise a narrow Gaussian bump around vertex 0.
    const Eigen::Vector3d tip = mesh.vertices[0];
    for (auto& v : mesh.vertices) {
        const double d2 = (v - tip).squaredNorm();
        v *= 1.0 + 0.08 * std::exp(-d2 / (2 * 0.06 * 0.06));
    }
    const auto state = makeMeshState(std::move(mesh));
    const MuField brute = muMesh(state, MeshMuBackend::BruteForce);
    EXPECT_GT(state.perNode[0].curvatures.largest(), 3.0);
    EXPECT_EQ(brute.branch[0], MuBranch::Local);
    EXPECT_EQ(brute.mu[0], state.perNode[0].curvatures.largest());
    const MuField pruned = muMesh(state);
    EXPECT_EQ(pruned.mu[0], brute.mu[0]);
    EXPECT_EQ(pruned.branch[0], MuBranch::Local);
}
