#include "necksim/flow.hpp"

#include "necksim/errors.hpp"
#include "necksim/inradius.hpp"
#include "necksim/mesh.hpp"
#include "necksim/parallel.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace necksim {

void validateFlowConfig(const FlowConfig& c) {
    if (c.kappa < 0.0) throw ConfigError("kappa must be >= 0");
    if (!(c.dtSafety > 0.0 && c.dtSafety <= 0.5)) throw ConfigError("dtSafety must lie in (0, 0.5]");
    if (!(c.maxCurvatureCap > 0.0) || !(c.minRadiusFloor > 0.0)) throw ConfigError("caps must be positive");
    if (!(c.tEnd > 0.0)) throw ConfigError("tEnd must be positive");
    if (!(c.snapshotEvery > 0.0)) throw ConfigError("snapshotEvery must be positive");
    if (c.resampleEvery < 0) throw ConfigError("resampleEvery must be >= 0");
}

std::string_view stopReasonName(StopReason reason) {
    switch (reason) {
    case StopReason::TEnd: return "tEnd";
    case StopReason::CurvatureCap: return "curvature-cap";
    case StopReason::RadiusFloor: return "radius-floor";
    case StopReason::TwoConvexityLost: return "two-convexity-lost";
    }
    return "?";
}

namespace {

std::vector<double> nodeSpeeds(const FlowState& state, const VelocityParams& params) {
    std::vector<double> g(state.perNode.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double margin = twoConvexityMargin(state.perNode[i].curvatures, params);
        if (!(margin > 0.0)) throw TwoConvexityError(margin, static_cast<std::ptrdiff_t>(i));
        g[i] = gKappa(state.perNode[i].curvatures, params);
    }
    return g;
}

// Positions after one explicit Euler step, as a flat list of coordinates.
Surface eulerMove(const FlowState& state, double dt, const VelocityParams& params) {
    const std::vector<double> g = nodeSpeeds(state, params);
    if (state.isProfile()) {
        ProfileCurve curve = state.profile();
        const bool closed = curve.topology == Topology::Closed;
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const Eigen::Vector3d& nu = state.perNode[i].normal;
            curve.nodes[i].z -= dt * g[i] * nu[0];
            if (closed && (i == 0 || i + 1 == curve.size())) continue; // poles stay on the axis
            curve.nodes[i].r -= dt * g[i] * nu[1];
        }
        return curve;
    }
    TriangleMesh mesh = state.mesh();
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        mesh.vertices[i] -= dt * g[i] * state.perNode[i].normal;
    return mesh;
}

FlowState withSurface(Surface surface, double t, long stepIndex) {
    if (auto* curve = std::get_if<ProfileCurve>(&surface)) return makeProfileState(std::move(*curve), t, stepIndex);
    return makeMeshState(std::get<TriangleMesh>(std::move(surface)), t, stepIndex);
}

Surface richardson(const Surface& half, const Surface& full) {
    if (const auto* h = std::get_if<ProfileCurve>(&half)) {
        ProfileCurve out = *h;
        const auto& f = std::get<ProfileCurve>(full);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out.nodes[i].z = 2.0 * h->nodes[i].z - f.nodes[i].z;
            out.nodes[i].r = 2.0 * h->nodes[i].r - f.nodes[i].r;
        }
        return out;
    }
    TriangleMesh out = std::get<TriangleMesh>(half);
    const auto& f = std::get<TriangleMesh>(full);
    for (std::size_t i = 0; i < out.vertices.size(); ++i) out.vertices[i] = 2.0 * out.vertices[i] - f.vertices[i];
    return out;
}

double maxLargestCurvature(const FlowState& state) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& g : state.perNode) m = std::max(m, g.curvatures.largest());
    return m;
}

} // namespace

FlowState step(const FlowState& state, double dt, const VelocityParams& params) {
    if (dt < 0.0) throw InvalidInputError("step: dt must be >= 0");
    const Surface full = eulerMove(state, dt, params);
    const FlowState halfway = withSurface(eulerMove(state, 0.5 * dt, params), state.t + 0.5 * dt, state.step);
    const Surface half = eulerMove(halfway, 0.5 * dt, params);
    FlowState next = withSurface(richardson(half, full), state.t + dt, state.step + 1);
    for (std::size_t i = 0; i < next.perNode.size(); ++i) {
        const double margin = twoConvexityMargin(next.perNode[i].curvatures, params);
        if (!(margin > 0.0)) throw TwoConvexityError(margin, static_cast<std::ptrdiff_t>(i));
    }
    return next;
}

double adaptiveDt(const FlowState& state, const FlowConfig& config) {
    const VelocityParams params{config.kappa};
    double hmin = std::numeric_limits<double>::infinity();
    double diffusivity = 0.0;
    double gmax = 0.0;
    if (state.isProfile()) {
        const ProfileCurve& c = state.profile();
        for (std::size_t i = 0; i < c.segmentCount(); ++i) hmin = std::min(hmin, c.segmentLength(i));
        const double others = c.n - 1.0;
        for (const auto& g : state.perNode) {
            const double G = gKappa(g.curvatures, params);
            const double d = g.lambdaMeridian + g.lambdaRotational - 2.0 * config.kappa;
            diffusivity = std::max(diffusivity, G * G * others / (d * d));
            gmax = std::max(gmax, G);
        }
    } else {
        const TriangleMesh& m = state.mesh();
        for (const auto& f : m.faces)
            for (int k = 0; k < 3; ++k)
                hmin = std::min(hmin, (m.vertices[static_cast<std::size_t>(f[k])] -
                                       m.vertices[static_cast<std::size_t>(f[(k + 1) % 3])]).norm());
        for (const auto& g : state.perNode) {
            const auto grad = gradGKappa(g.curvatures, params);
            diffusivity = std::max(diffusivity, *std::max_element(grad.begin(), grad.end()));
            gmax = std::max(gmax, gKappa(g.curvatures, params));
        }
    }
    double dt = config.dtSafety * hmin * hmin / diffusivity;
    if (gmax > 0.0) dt = std::min(dt, config.dtSafety * hmin / gmax);
    return dt;
}

double characteristicRadius(const FlowState& state) {
    if (state.isProfile()) {
        const ProfileCurve& c = state.profile();
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& node : c.nodes) {
            lo = std::min(lo, node.r);
            hi = std::max(hi, node.r);
        }
        return c.topology == Topology::PeriodicNeck ? lo : hi;
    }
    const TriangleMesh& m = state.mesh();
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& v : m.vertices) centroid += v;
    centroid /= static_cast<double>(m.vertices.size());
    double hi = 0.0;
    for (const auto& v : m.vertices) hi = std::max(hi, (v - centroid).norm());
    return hi;
}

namespace {

double resolvedBeta(const FlowConfig& config, const FlowState& state) {
    return config.beta > 0.0 ? config.beta : cylinderMuRatio(state.dimension());
}

void snapshot(Trajectory& traj, FlowState state, const FlowConfig& config) {
    attachMu(state);
    if (config.monitors) traj.series.push_back(monitors(state, {config.kappa}, resolvedBeta(config, state)));
    traj.snapshots.push_back(std::move(state));
}

} // namespace

Trajectory run(const FlowState& initial, const FlowConfig& config) {
    validateFlowConfig(config);
    const VelocityParams params{config.kappa};
    nodeSpeeds(initial, params); // rejects initial data outside the cone

    FlowState state = initial;
    state.mu.reset();
    const std::size_t segments = state.isProfile() ? state.profile().segmentCount() : 0;

    Trajectory traj;
    snapshot(traj, state, config);
    double nextSnapshot = state.t + config.snapshotEvery;

    while (true) {
        if (state.t >= config.tEnd) {
            traj.stop = StopReason::TEnd;
            break;
        }
        if (maxLargestCurvature(state) > config.maxCurvatureCap) {
            traj.stop = StopReason::CurvatureCap;
            break;
        }
        if (characteristicRadius(state) < config.minRadiusFloor) {
            traj.stop = StopReason::RadiusFloor;
            break;
        }
        if (traj.steps >= config.maxSteps) throw Error("flow: step budget exhausted");

        double dt = adaptiveDt(state, config);
        double target = std::numeric_limits<double>::infinity();
        if (state.t + dt >= nextSnapshot) target = nextSnapshot;
        if (state.t + dt >= config.tEnd) target = std::min(target, config.tEnd);
        if (target < std::numeric_limits<double>::infinity()) dt = target - state.t;

        FlowState next;
        try {
            next = step(state, dt, params);
            if (target < std::numeric_limits<double>::infinity()) next.t = target;
            if (config.resampleEvery > 0 && next.isProfile() && next.step % config.resampleEvery == 0) {
                const ProfileCurve& c = next.profile();
                FlowState resampled = makeProfileState(resample(c, c.totalLength() / static_cast<double>(segments)),
                                                       next.t, next.step);
                nodeSpeeds(resampled, params);
                next = std::move(resampled);
            }
        } catch (const TwoConvexityError&) {
            traj.stop = StopReason::TwoConvexityLost;
            break;
        }
        state = std::move(next);
        ++traj.steps;

        if (state.t >= nextSnapshot) {
            snapshot(traj, state, config);
            while (nextSnapshot <= state.t) nextSnapshot += config.snapshotEvery;
        }
    }
    if (traj.snapshots.back().t != state.t || traj.snapshots.back().step != state.step)
        snapshot(traj, state, config);
    return traj;
}

namespace {

namespace ode = boost::numeric::odeint;
using OdeState = std::vector<double>;

struct EigenvalueOde {
    double kappa;
    void operator()(const OdeState& lambda, OdeState& dlambda, double) const {
        const double g = gKappa(PrincipalCurvatures(lambda), {kappa});
        dlambda.resize(lambda.size());
        for (std::size_t i = 0; i < lambda.size(); ++i) dlambda[i] = g * lambda[i] * lambda[i];
    }
};

// Integrates to every requested time (ascending); returns the states there.
std::vector<OdeState> integrateTo(const OdeState& start, double kappa, const std::vector<double>& times) {
    std::vector<OdeState> out;
    out.reserve(times.size());
    OdeState x = start;
    auto stepper = ode::make_controlled(1e-14, 1e-12, ode::runge_kutta_dopri5<OdeState>());
    std::vector<double> all{0.0};
    all.insert(all.end(), times.begin(), times.end());
    ode::integrate_times(stepper, EigenvalueOde{kappa}, x, all.begin(), all.end(), 1e-4,
                         [&](const OdeState& s, double) { out.push_back(s); });
    out.erase(out.begin());
    return out;
}

} // namespace

PrincipalCurvatures evolveHomogeneous(const PrincipalCurvatures& lambda0, const VelocityParams& params, double t) {
    gKappa(lambda0, params);
    if (t < 0.0) throw InvalidInputError("evolveHomogeneous: t must be >= 0");
    if (t == 0.0) return lambda0;
    const OdeState start(lambda0.values().begin(), lambda0.values().end());
    return PrincipalCurvatures(integrateTo(start, params.kappa, {t}).front());
}

double homogeneousOdeCheck(const ModelShape& shape, const VelocityParams& params, double tEnd) {
    validateShape(shape);
    if (shape.kind == ShapeKind::CosineNeck) throw InvalidInputError("homogeneous check needs a sphere or cylinder");
    if (!(tEnd > 0.0)) throw InvalidInputError("homogeneous check needs tEnd > 0");
    const auto n = static_cast<std::size_t>(shape.n);
    OdeState start(n, 1.0 / shape.radius);
    if (shape.kind == ShapeKind::Cylinder) start[0] = 0.0;

    constexpr int kSamples = 40;
    const double tau = 1e-3 * tEnd;
    std::vector<double> times;
    std::vector<double> centers;
    for (int m = 0; m < kSamples; ++m) {
        const double c = 2.0 * tau + (tEnd - 4.0 * tau) * m / (kSamples - 1.0);
        centers.push_back(c);
        for (int k = -2; k <= 2; ++k) times.push_back(c + k * tau);
    }
    const std::vector<OdeState> states = integrateTo(start, params.kappa, times);

    double worst = 0.0;
    for (int m = 0; m < kSamples; ++m) {
        double G[5];
        for (int k = 0; k < 5; ++k) G[k] = gKappa(PrincipalCurvatures(states[static_cast<std::size_t>(5 * m + k)]), params);
        const double dGdt = (G[0] - 8.0 * G[1] + 8.0 * G[3] - G[4]) / (12.0 * tau);
        const PrincipalCurvatures lambda(states[static_cast<std::size_t>(5 * m + 2)]);
        const auto grad = gradGKappa(lambda, params);
        CompensatedSum rhs;
        for (std::size_t i = 0; i < n; ++i) rhs.add(grad[i] * lambda[i] * lambda[i] * G[2]);
        worst = std::max(worst, std::abs(dGdt - rhs.value()));
    }
    return worst;
}

} // namespace necksim
