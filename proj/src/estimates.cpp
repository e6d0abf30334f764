#include "necksim/estimates.hpp"

#include "necksim/errors.hpp"
#include "necksim/flow.hpp"
#include "necksim/mesh.hpp"
#include "necksim/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace necksim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double derivativeAt(double fm, double f0, double fp, double hm, double hp) {
    const double sum = hm + hp;
    return -hp / (hm * sum) * fm + (hp - hm) / (hm * hp) * f0 + hm / (hp * sum) * fp;
}

std::vector<double> nodeSpeeds(const FlowState& state, const VelocityParams& params) {
    std::vector<double> g(state.perNode.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double margin = twoConvexityMargin(state.perNode[i].curvatures, params);
        if (!(margin > 0.0)) throw TwoConvexityError(margin, static_cast<std::ptrdiff_t>(i));
        g[i] = gKappa(state.perNode[i].curvatures, params);
    }
    return g;
}

const MuField& requireMu(const FlowState& state) {
    if (!state.mu) throw InvalidInputError("mu field is not attached to the state");
    return *state.mu;
}

} // namespace

std::vector<double> curvatureGradientNorms(const FlowState& state) {
    const auto& geom = state.perNode;
    const std::size_t N = geom.size();
    std::vector<double> out(N, 0.0);
    if (state.isProfile()) {
        const ProfileCurve& c = state.profile();
        const bool closed = c.topology == Topology::Closed;
        const double total = c.totalLength();
        for (std::size_t i = 0; i < N; ++i) {
            // Curvatures are even across the axis, so their derivative vanishes at a pole.
            if (closed && (i == 0 || i + 1 == N)) continue;
            const std::size_t im = i == 0 ? N - 1 : i - 1;
            const std::size_t ip = i + 1 == N ? 0 : i + 1;
            const double hm = i == 0 ? geom[i].s + total - geom[im].s : geom[i].s - geom[im].s;
            const double hp = ip == 0 ? geom[ip].s + total - geom[i].s : geom[ip].s - geom[i].s;
            const double dm = derivativeAt(geom[im].lambdaMeridian, geom[i].lambdaMeridian,
                                           geom[ip].lambdaMeridian, hm, hp);
            const double dr = derivativeAt(geom[im].lambdaRotational, geom[i].lambdaRotational,
                                           geom[ip].lambdaRotational, hm, hp);
            out[i] = std::max(std::abs(dm), std::abs(dr));
        }
        return out;
    }
    const TriangleMesh& m = state.mesh();
    const auto nb = vertexNeighbors(m);
    for (std::size_t i = 0; i < N; ++i) {
        for (int j : nb[i]) {
            const auto ju = static_cast<std::size_t>(j);
            const double len = (m.vertices[ju] - m.vertices[i]).norm();
            for (std::size_t k = 0; k < geom[i].curvatures.dim(); ++k)
                out[i] = std::max(out[i], std::abs(geom[ju].curvatures[k] - geom[i].curvatures[k]) / len);
        }
    }
    return out;
}

MonitorSample monitors(const FlowState& state, const VelocityParams& params, double beta) {
    const MuField& mu = requireMu(state);
    const std::vector<double> g = nodeSpeeds(state, params);
    const std::vector<double> grad = curvatureGradientNorms(state);

    MonitorSample s;
    s.t = state.t;
    s.supMuOverG = s.supHOverG = s.supLambdaNOverG = s.supGradHOverG2 = s.supG = -kInf;
    s.infLambda1OverG = s.minPinchEig = kInf;
    CompensatedSum area;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const NodeGeometry& node = state.perNode[i];
        if (!(node.areaWeight > 0.0)) continue;
        const CurvatureScalars sc = scalars(node.curvatures, params);
        const double G = g[i];
        s.supMuOverG = std::max(s.supMuOverG, mu.mu[i] / G);
        s.supHOverG = std::max(s.supHOverG, sc.H / G);
        s.infLambda1OverG = std::min(s.infLambda1OverG, node.curvatures.smallest() / G);
        s.supLambdaNOverG = std::max(s.supLambdaNOverG, node.curvatures.largest() / G);
        s.supGradHOverG2 = std::max(s.supGradHOverG2, grad[i] / (G * G));
        s.supG = std::max(s.supG, G);
        s.minPinchEig = std::min(s.minPinchEig, beta * G - node.curvatures.largest());
        area.add(node.areaWeight);
    }
    s.area = area.value();
    if (!(s.area > 0.0)) throw DegenerateGeometryError("monitors: surface has no area");
    return s;
}

MonitorSample monitors(const FlowState& state, const VelocityParams& params) {
    return monitors(state, params, cylinderMuRatio(state.dimension()));
}

void validateLevelParams(const LevelFunctionParams& p) {
    if (!(p.sigma > 0.0 && p.sigma < 1.0)) throw ConfigError("sigma must lie in (0, 1)");
    if (!(p.delta > 0.0)) throw ConfigError("delta must be positive");
    if (!(p.k >= 0.0)) throw ConfigError("k must be >= 0");
    if (!(p.p >= 1.0)) throw ConfigError("p must be >= 1");
}

std::vector<double> levelFunction(const FlowState& state, const LevelFunctionParams& level,
                                  const VelocityParams& params) {
    const MuField& mu = requireMu(state);
    const std::vector<double> g = nodeSpeeds(state, params);
    const double c = cylinderMuRatio(state.dimension()) + level.delta;
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        f[i] = std::pow(g[i], level.sigma - 1.0) * (mu.mu[i] - c * g[i]) - level.k;
    return f;
}

double lpIntegral(const FlowState& state, std::span<const double> f, double p) {
    if (!(p >= 1.0)) throw InvalidInputError("lp integral needs p >= 1");
    if (f.size() != state.perNode.size()) throw InvalidInputError("lp integral: field size mismatch");
    CompensatedSum sum;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] > 0.0) sum.add(std::pow(f[i], p) * state.perNode[i].areaWeight);
    return sum.value();
}

std::vector<std::pair<double, double>> aOfK(const Trajectory& traj, const LevelFunctionParams& level,
                                            std::span<const double> ks, const VelocityParams& params) {
    if (traj.snapshots.size() < 2) throw InvalidInputError("A(k) needs at least two snapshots");
    // k enters f additively, so evaluate the k-free part once per snapshot.
    LevelFunctionParams base = level;
    base.k = 0.0;
    std::vector<std::vector<double>> f0;
    f0.reserve(traj.snapshots.size());
    for (const auto& s : traj.snapshots) f0.push_back(levelFunction(s, base, params));

    std::vector<std::pair<double, double>> out;
    out.reserve(ks.size());
    for (double k : ks) {
        std::vector<double> areas(traj.snapshots.size());
        for (std::size_t m = 0; m < traj.snapshots.size(); ++m) {
            CompensatedSum a;
            for (std::size_t i = 0; i < f0[m].size(); ++i)
                if (f0[m][i] - k >= 0.0) a.add(traj.snapshots[m].perNode[i].areaWeight);
            areas[m] = a.value();
        }
        CompensatedSum integral;
        for (std::size_t m = 0; m + 1 < areas.size(); ++m)
            integral.add(0.5 * (areas[m] + areas[m + 1]) * (traj.snapshots[m + 1].t - traj.snapshots[m].t));
        out.emplace_back(k, integral.value());
    }
    return out;
}

double stampacchiaVanishingLevel(double alpha, double gamma, double C, double k0, double phi0) {
    (void)k0; // the level is relative to k0
    if (!(gamma > 1.0)) throw IterationDivergesError("Stampacchia iteration needs gamma > 1");
    if (!(alpha > 0.0) || !(C > 0.0) || phi0 < 0.0)
        throw InvalidInputError("Stampacchia level needs alpha > 0, C > 0, phi0 >= 0");
    if (phi0 == 0.0) return 0.0;
    const double exponent = alpha * gamma / (gamma - 1.0);
    return std::pow(C * std::pow(phi0, gamma - 1.0) * std::exp2(exponent), 1.0 / alpha);
}

PinchReport maxPrincipleCheck(const Trajectory& traj, double beta, const VelocityParams& params) {
    PinchReport rep;
    rep.beta = beta;
    for (const auto& s : traj.snapshots) {
        const std::vector<double> g = nodeSpeeds(s, params);
        double minEig = kInf, supG = -kInf;
        for (std::size_t i = 0; i < g.size(); ++i) {
            minEig = std::min(minEig, beta * g[i] - s.perNode[i].curvatures.largest());
            supG = std::max(supG, g[i]);
        }
        rep.times.push_back(s.t);
        rep.minEig.push_back(minEig);
        rep.supG.push_back(supG);
        if (!rep.firstViolation && minEig < -kPinchTolerance * supG) rep.firstViolation = s.t;
    }
    return rep;
}

std::vector<FittedConstants> fitConstants(const Trajectory& traj, std::span<const double> deltaGrid,
                                          const VelocityParams& params, std::size_t first, std::size_t last) {
    if (last == 0) last = traj.snapshots.size();
    if (first >= last || last > traj.snapshots.size()) throw InvalidInputError("fitConstants: empty snapshot range");
    std::vector<FittedConstants> out;
    for (double delta : deltaGrid) {
        FittedConstants fc;
        fc.delta = delta;
        fc.inscribed = fc.cylindrical = fc.convexity = fc.largest = -kInf;
        for (std::size_t m = first; m < last; ++m) {
            const FlowState& s = traj.snapshots[m];
            const MuField& mu = requireMu(s);
            const std::vector<double> g = nodeSpeeds(s, params);
            const double cMu = cylinderMuRatio(s.dimension()) + delta;
            const double cH = cylinderHRatio(s.dimension()) + delta;
            for (std::size_t i = 0; i < g.size(); ++i) {
                const auto& lambda = s.perNode[i].curvatures;
                const CurvatureScalars sc = scalars(lambda, params);
                fc.inscribed = std::max(fc.inscribed, mu.mu[i] - cMu * g[i]);
                fc.cylindrical = std::max(fc.cylindrical, sc.H - cH * g[i]);
                fc.convexity = std::max(fc.convexity, -lambda.smallest() - delta * g[i]);
                fc.largest = std::max(fc.largest, lambda.largest() - cMu * g[i]);
            }
        }
        out.push_back(fc);
    }
    return out;
}

double fitGradientConstant(const Trajectory& traj, double gThreshold, const VelocityParams& params) {
    double best = 0.0;
    for (const auto& s : traj.snapshots) {
        const std::vector<double> g = nodeSpeeds(s, params);
        const std::vector<double> grad = curvatureGradientNorms(s);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] >= gThreshold) best = std::max(best, grad[i] / (g[i] * g[i]));
    }
    return best;
}

} // namespace necksim
