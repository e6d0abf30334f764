#pragma once

#include "necksim/geometry.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace necksim::test_support {

/// Closed profile from a polar curve θ -> (z, r), θ ∈ [0, π], uniform in θ.
inline ProfileCurve closedPolarCurve(int n, std::size_t N, const std::function<ProfileNode(double)>& at) {
    ProfileCurve c;
    c.n = n;
    c.topology = Topology::Closed;
    for (std::size_t i = 0; i < N; ++i) {
        const double theta = std::numbers::pi * static_cast<double>(i) / static_cast<double>(N - 1);
        ProfileNode p = at(theta);
        if (i == 0 || i + 1 == N) p.r = 0.0;
        c.nodes.push_back(p);
    }
    return c;
}

inline ProfileCurve ellipsoidCurve(int n, double axial, double radial, std::size_t N) {
    return closedPolarCurve(n, N, [&](double t) {
        return ProfileNode{-axial * std::cos(t), radial * std::sin(t)};
    });
}

/// ρ(θ) = 1 + eps cos 2θ: a peanut with a waist at the equator.
inline ProfileCurve peanutCurve(int n, double eps, std::size_t N) {
    return closedPolarCurve(n, N, [&](double t) {
        const double rho = 1.0 + eps * std::cos(2.0 * t);
        return ProfileNode{-rho * std::cos(t), rho * std::sin(t)};
    });
}

inline ProfileCurve scaled(ProfileCurve c, double factor) {
    for (auto& p : c.nodes) {
        p.z *= factor;
        p.r *= factor;
    }
    c.period *= factor;
    return c;
}

} // namespace necksim::test_support
