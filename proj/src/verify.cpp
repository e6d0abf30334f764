#include "necksim/verify.hpp"

#include "necksim/errors.hpp"
#include "necksim/estimates.hpp"
#include "necksim/inradius.hpp"
#include "necksim/mesh.hpp"
#include "necksim/shapes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

namespace necksim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Violation measure used to pick the headline: how far outside its tolerance a check is.
double excess(const Check& c) {
    if (c.pass) return -kInf;
    const double gap = std::abs(c.actual - c.expected) - c.tol;
    return std::isnan(gap) ? kInf : gap;
}

// Closed profile from a polar curve θ -> (z, r), θ ∈ [0, π], uniform in θ.
ProfileCurve closedPolarProfile(int n, std::size_t N, const std::function<ProfileNode(double)>& at) {
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

std::size_t waistNode(const FlowState& state) {
    const auto& nodes = state.profile().nodes;
    return static_cast<std::size_t>(
        std::min_element(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.r < b.r; }) -
        nodes.begin());
}

std::vector<double> speeds(const FlowState& state, const VelocityParams& params) {
    std::vector<double> g;
    g.reserve(state.perNode.size());
    for (const auto& node : state.perNode) g.push_back(gKappa(node.curvatures, params));
    return g;
}

PrincipalCurvatures cylinderCurvatures(int n, double r) {
    std::vector<double> lambda(static_cast<std::size_t>(n), 1.0 / r);
    lambda[0] = 0.0;
    return PrincipalCurvatures(std::move(lambda));
}

PrincipalCurvatures sphereCurvatures(int n, double r) {
    return PrincipalCurvatures(std::vector<double>(static_cast<std::size_t>(n), 1.0 / r));
}

// Snapshots of an exact shrinking solution (n = 3, r0 = 1) at the given times, μ attached.
Trajectory exactTrajectory(ShapeKind kind, std::initializer_list<double> times) {
    Trajectory traj;
    for (double t : times) {
        const ModelShape shape = kind == ShapeKind::Sphere ? ModelShape::sphere(3, exactSphereRadius(3, 1.0, t))
                                                           : ModelShape::cylinder(3, exactCylinderRadius(3, 1.0, t), 4.0);
        FlowState s = modelState(shape, 128);
        s.t = t;
        attachMu(s);
        traj.snapshots.push_back(std::move(s));
    }
    return traj;
}

// Index one past the last snapshot with t <= tMid.
std::size_t firstHalfEnd(const Trajectory& traj) {
    const double tMid = 0.5 * traj.snapshots.back().t;
    std::size_t m = 0;
    while (m < traj.snapshots.size() && traj.snapshots[m].t <= tMid) ++m;
    return std::max<std::size_t>(m, 1);
}

constexpr double kNeckDelta = 0.5;

} // namespace

Check checkNear(std::string name, double expected, double actual, double tol) {
    return {std::move(name), expected, actual, tol, std::abs(actual - expected) <= tol};
}

Check checkAtMost(std::string name, double bound, double actual, double tol) {
    return {std::move(name), bound, actual, tol, actual <= bound + tol};
}

Check checkAtLeast(std::string name, double bound, double actual, double tol) {
    return {std::move(name), bound, actual, tol, actual >= bound - tol};
}

bool CriterionResult::pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check& CriterionResult::headline() const {
    if (checks.empty()) throw InvalidInputError("criterion has no checks");
    const Check* worst = &checks.back();
    for (const auto& c : checks)
        if (excess(c) > excess(*worst)) worst = &c;
    return *worst;
}

double uniformDouble(std::mt19937_64& rng, double lo, double hi) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

PrincipalCurvatures randomTwoConvex(std::mt19937_64& rng, int n, double kappa, double lo, double hi,
                                    double minMargin) {
    if (n < 2) throw InvalidInputError("randomTwoConvex: n must be >= 2");
    while (true) {
        std::vector<double> lambda(static_cast<std::size_t>(n));
        for (auto& l : lambda) l = uniformDouble(rng, lo, hi);
        PrincipalCurvatures p(std::move(lambda));
        if (p[0] + p[1] - 2.0 * kappa >= minMargin) return p;
    }
}

ProfileCurve ellipsoidProfile(int n, double axial, double radial, std::size_t N) {
    return closedPolarProfile(n, N, [&](double t) { return ProfileNode{-axial * std::cos(t), radial * std::sin(t)}; });
}

ProfileCurve peanutProfile(int n, double eps, std::size_t N) {
    return closedPolarProfile(n, N, [&](double t) {
        const double rho = 1.0 + eps * std::cos(2.0 * t);
        return ProfileNode{-rho * std::cos(t), rho * std::sin(t)};
    });
}

std::vector<double> stampacchiaExtremalLog(double alpha, double gamma, double C, double phi0, double level,
                                           std::size_t steps) {
    if (!(phi0 > 0.0) || !(level > 0.0)) throw InvalidInputError("extremal sequence needs phi0 > 0 and level > 0");
    std::vector<double> out{std::log(phi0)};
    const double logC = std::log(C);
    const double logLevel = std::log(level);
    for (std::size_t m = 0; m < steps; ++m) {
        // k_{m+1} - k_m = level 2^{-(m+1)}
        const double logGap = logLevel - static_cast<double>(m + 1) * std::numbers::ln2;
        const double next = logC - alpha * logGap + gamma * out.back();
        out.push_back(next);
        if (next > out.front() || next == -kInf) break;
    }
    return out;
}

NeckRun runAcceptanceNeck(std::size_t nodes) {
    const auto start = Clock::now();
    const ModelShape neck = ModelShape::cosineNeck(3, 0.5, 0.3, 4.0);
    FlowConfig config;
    config.tEnd = 10.0;
    config.snapshotEvery = 0.0025;
    config.minRadiusFloor = 0.25 * (neck.meanRadius - neck.amplitude);
    config.beta = cylinderMuRatio(3);
    NeckRun run_;
    run_.traj = run(modelState(neck, nodes), config);
    run_.seconds = secondsSince(start);
    return run_;
}

CriterionResult sharpCylinderRatio() {
    const auto start = Clock::now();
    CriterionResult res{1, "sharp cylinder ratio mu/G = (n-1)(n+2)/4", {}, 0.0};
    for (int n = 2; n <= 8; ++n) {
        const double expected = (n - 1.0) * (n + 2.0) / 4.0;
        const double r = 0.7;
        // The inscribed ball of a round cylinder is its cross-section: μ = 1/r.
        const double analytic = (1.0 / r) / gKappa(cylinderCurvatures(n, r), {});
        res.checks.push_back(checkNear("analytic n=" + std::to_string(n), expected, analytic, 1e-12));

        FlowState s = makeProfileState(modelState(ModelShape::cylinder(n, r, 4.0), 256).profile());
        attachMu(s);
        double worst = 0.0;
        const auto g = speeds(s, {});
        for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(s.mu->mu[i] / g[i] - expected));
        res.checks.push_back(checkNear("discrete N=256 n=" + std::to_string(n), 0.0, worst, 1e-6));
    }
    res.seconds = secondsSince(start);
    return res;
}

CriterionResult cylindricalConstant() {
    const auto start = Clock::now();
    CriterionResult res{2, "cylindrical constant H/G = (n-1)^2(n+2)/4", {}, 0.0};
    for (int n = 2; n <= 8; ++n) {
        const PrincipalCurvatures lambda = cylinderCurvatures(n, 1.3);
        const double ratio = scalars(lambda, {}).H / gKappa(lambda, {});
        res.checks.push_back(
            checkNear("n=" + std::to_string(n), (n - 1.0) * (n - 1.0) * (n + 2.0) / 4.0, ratio, 1e-12));
    }
    res.seconds = secondsSince(start);
    return res;
}

CriterionResult umbilicRatio() {
    const auto start = Clock::now();
    CriterionResult res{3, "umbilic ratio mu/G = n(n-1)/4 on spheres", {}, 0.0};
    for (int n = 2; n <= 8; ++n) {
        const double r = 0.9;
        const double ratio = (1.0 / r) / gKappa(sphereCurvatures(n, r), {});
        res.checks.push_back(checkNear("n=" + std::to_string(n), n * (n - 1.0) / 4.0, ratio, 1e-12));
    }
    res.seconds = secondsSince(start);
    return res;
}

CriterionResult exactSolutionConvergence() {
    const auto start = Clock::now();
    CriterionResult res{4, "exact sphere and cylinder solutions", {}, 0.0};
    {
        FlowConfig config;
        config.tEnd = 0.5;
        config.snapshotEvery = 0.05;
        config.monitors = false;
        const Trajectory traj = run(modelState(ModelShape::sphere(3, 1.0), 200), config);
        double worst = 0.0;
        for (const auto& s : traj.snapshots) {
            const double exact = std::sqrt(1.0 - 4.0 * s.t / 3.0);
            for (const auto& p : s.profile().nodes) worst = std::max(worst, std::abs(std::hypot(p.z, p.r) - exact));
        }
        res.checks.push_back(checkNear("sphere t=0.5 reached", 0.5, traj.snapshots.back().t, 0.0));
        res.checks.push_back(checkAtMost("sphere max radius error", 1e-3, worst));
    }
    {
        FlowConfig config;
        config.tEnd = 1.0;
        config.snapshotEvery = 0.05;
        config.monitors = false;
        const Trajectory traj = run(modelState(ModelShape::cylinder(3, 1.0, 4.0), 128), config);
        double worst = 0.0;
        for (const auto& s : traj.snapshots) {
            const double exact = std::sqrt(1.0 - 0.8 * s.t);
            for (const auto& p : s.profile().nodes) worst = std::max(worst, std::abs(p.r - exact));
        }
        res.checks.push_back(checkNear("cylinder t=1 reached", 1.0, traj.snapshots.back().t, 0.0));
        res.checks.push_back(checkAtMost("cylinder max radius error", 1e-3, worst));
    }
    res.seconds = secondsSince(start);
    return res;
}

CriterionResult gradientCheck(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult res{5, "gradient of G_kappa vs central differences", {}, 0.0};
    std::mt19937_64 rng(seed);
    for (double kappa : {0.0, 0.1}) {
        for (int n = 2; n <= 6; ++n) {
            double worst = 0.0;
            for (int draw = 0; draw < 100; ++draw) {
                const PrincipalCurvatures lambda = randomTwoConvex(rng, n, kappa, -1.0, 3.0, 0.2);
                const auto grad = gradGKappa(lambda, {kappa});
                for (std::size_t i = 0; i < lambda.dim(); ++i) {
                    const double h = 1e-5 * std::max(1.0, std::abs(lambda[i]));
                    std::vector<double> up(lambda.values().begin(), lambda.values().end());
                    std::vector<double> down = up;
                    up[i] += h;
                    down[i] -= h;
                    // G is symmetric, so re-sorting the perturbed vector does not change its value.
                    const double fd = (gKappa(PrincipalCurvatures(up), {kappa}) -
                                       gKappa(PrincipalCurvatures(down), {kappa})) / (2.0 * h);
                    worst = std::max(worst, std::abs(fd - grad[i]) / std::abs(grad[i]));
                }
            }
            res.checks.push_back(checkAtMost("n=" + std::to_string(n) + " kappa=" + (kappa == 0.0 ? "0" : "0.1"),
                                             1e-6, worst));
        }
    }
    res.seconds = secondsSince(start);
    return res;
}

CriterionResult concavityCheck(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult res{6, "midpoint concavity of G_kappa on the cone", {}, 0.0};
    std::mt19937_64 rng(seed);
    double worst = kInf;
    for (int k = 0; k < 10000; ++k) {
        const int n = 2 + k % 5;
        const double kappa = k % 2 == 0 ? 0.0 : 0.1;
        const auto a = randomTwoConvex(rng, n, kappa, -2.0, 5.0, 1e-3);
        const auto b = randomTwoConvex(rng, n, kappa, -2.0, 5.0, 1e-3);
        worst = std::min(worst, concavityProbe(a, b, {kappa}));
    }
    res.checks.push_back(checkAtLeast("min probe over 1e4 pairs", -1e-12, worst));
    res.seconds = secondsSince(start);
    return res;
}

CriterionResult azimuthalReduction(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult res{7, "azimuthal reduction of the two-point sup", {}, 0.0};
    std::vector<std::pair<std::string, FlowState>> shapes;
    shapes.emplace_back("sphere", makeProfileState(modelState(ModelShape::sphere(3, 1.0), 161).profile()));
    shapes.emplace_back("cylinder", makeProfileState(modelState(ModelShape::cylinder(3, 0.8, 4.0), 96).profile()));
    shapes.emplace_back("neck", makeProfileState(modelState(ModelShape::cosineNeck(3, 0.5, 0.3, 4.0), 200).profile()));
    shapes.emplace_back("ellipsoid", makeProfileState(ellipsoidProfile(3, 1.5, 0.7, 151)));
    shapes.emplace_back("peanut", makeProfileState(peanutProfile(4, 0.35, 181)));
    std::mt19937_64 rng(seed);
    for (const auto& [name, state] : shapes) {
        const MuField mu = muProfile(state);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const auto i = static_cast<std::size_t>(rng() % state.perNode.size());
            const double brute = muAzimuthBruteforce(state, i, 4096);
            worst = std::max(worst, std::abs(mu.twoPoint[i] - brute) / std::max(1.0, std::abs(brute)));
        }
        res.checks.push_back(checkAtMost(name + " 50 nodes", 1e-8, worst));
    }
    res.seconds = secondsSince(start);
    return res;
}

CriterionResult neckSharpnessTrend(const NeckRun& neck) {
    const auto start = Clock::now();
    CriterionResult res{8, "neck sharpness trend", {}, 0.0};
    const Trajectory& traj = neck.traj;
    const FlowState& last = traj.snapshots.back();
    const double waist0 = characteristicRadius(traj.snapshots.front());
    res.checks.push_back(checkNear("stopped at the radius floor", 1.0,
                                   traj.stop == StopReason::RadiusFloor ? 1.0 : 0.0, 0.0));
    res.checks.push_back(checkAtMost("waist fell by factor 4", 0.25, characteristicRadius(last) / waist0));

    const std::size_t w = waistNode(last);
    const double ratio = last.mu->mu[w] / gKappa(last.perNode[w].curvatures, {});
    const double sharp = cylinderMuRatio(3);
    res.checks.push_back(checkNear("final waist mu/G", sharp, ratio, 0.15 * sharp));

    const double deltas[] = {kNeckDelta};
    const double firstHalf = fitConstants(traj, deltas, {}, 0, firstHalfEnd(traj)).front().inscribed;
    const double whole = fitConstants(traj, deltas, {}).front().inscribed;
    res.checks.push_back(checkAtMost("C1(0.5) growth over second half", firstHalf + 0.1 * std::abs(firstHalf), whole));
    res.seconds = secondsSince(start) + neck.seconds;
    return res;
}

CriterionResult pinchPreservation(const NeckRun& neck) {
    const auto start = Clock::now();
    CriterionResult res{9, "pinching tensor preservation", {}, 0.0};
    const double beta = cylinderMuRatio(3);
    const PinchReport rep = maxPrincipleCheck(neck.traj, beta, {});

    // The cosine neck starts with λ_1 < 0 at the waist, so λ_n/G > β there
    // already at t = 0: the normalized deficit must not worsen along the flow.
    const double initial = rep.minEig.front() / rep.supG.front();
    double worst = kInf;
    for (std::size_t m = 0; m < rep.minEig.size(); ++m) worst = std::min(worst, rep.minEig[m] / rep.supG[m]);
    res.checks.push_back(checkAtLeast("neck min (beta G - lambda_n)/supG vs t=0", initial, worst, kPinchTolerance));

    const PinchReport sphere = maxPrincipleCheck(exactTrajectory(ShapeKind::Sphere, {0.0, 0.1, 0.2, 0.3, 0.5}),
                                                 sphereMuRatio(3), {});
    const PinchReport cylinder = maxPrincipleCheck(exactTrajectory(ShapeKind::Cylinder, {0.0, 0.25, 0.5, 0.75, 1.0}),
                                                   cylinderMuRatio(3), {});
    double sphereWorst = 0.0, cylinderWorst = 0.0;
    for (double e : sphere.minEig) sphereWorst = std::max(sphereWorst, std::abs(e));
    for (double e : cylinder.minEig) cylinderWorst = std::max(cylinderWorst, std::abs(e));
    res.checks.push_back(checkNear("exact sphere beta=n(n-1)/4", 0.0, sphereWorst, 1e-10));
    res.checks.push_back(checkNear("exact cylinder beta=(n-1)(n+2)/4", 0.0, cylinderWorst, 1e-10));
    res.seconds = secondsSince(start);
    return res;
}

CriterionResult stampacchiaOracle(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult res{10, "Stampacchia vanishing level vs recursion", {}, 0.0};
    // At exactly d the extremal sequence rides the separatrix φ0 2^{-mα/(γ-1)}, where
    // rounding is amplified by γ per step; the level is therefore bracketed.
    constexpr double kBracket = 1e-9;
    std::mt19937_64 rng(seed);
    double worstDecay = -kInf;   // relative excess of log φ(k_m) over log(φ0 2^{-mα/(γ-1)}), level d(1+η)
    double vanished = 0.0;       // draws whose sequence underflowed to zero above d
    double regrewBelow = 0.0;    // draws regrowing above φ0 at d(1-η)
    double regrewAtNine = 0.0;   // draws regrowing above φ0 at 0.9 d
    constexpr int kDraws = 100;
    for (int draw = 0; draw < kDraws; ++draw) {
        const double alpha = uniformDouble(rng, 1.0, 4.0);
        const double gamma = 3.0 - uniformDouble(rng, 0.0, 2.0);
        const double C = std::exp(uniformDouble(rng, -2.0, 2.0));
        const double phi0 = std::exp(uniformDouble(rng, -3.0, 3.0));
        const double d = stampacchiaVanishingLevel(alpha, gamma, C, 0.0, phi0);
        const double rate = alpha / (gamma - 1.0) * std::numbers::ln2;

        constexpr std::size_t kSteps = 100'000'000;
        const auto above = stampacchiaExtremalLog(alpha, gamma, C, phi0, d * (1.0 + kBracket), kSteps);
        for (std::size_t m = 0; m < above.size(); ++m) {
            const double bound = above.front() - static_cast<double>(m) * rate;
            worstDecay = std::max(worstDecay, (above[m] - bound) / std::max(1.0, std::abs(bound)));
        }
        if (above.back() == -kInf) vanished += 1.0;
        const auto below = stampacchiaExtremalLog(alpha, gamma, C, phi0, d * (1.0 - kBracket), kSteps);
        if (below.back() > below.front()) regrewBelow += 1.0;
        const auto nine = stampacchiaExtremalLog(alpha, gamma, C, phi0, 0.9 * d, kSteps);
        if (nine.back() > nine.front()) regrewAtNine += 1.0;
    }
    res.checks.push_back(checkAtMost("decay bound at d(1+1e-9), relative log excess", 0.0, worstDecay, 1e-12));
    res.checks.push_back(checkNear("draws vanishing at d(1+1e-9)", kDraws, vanished, 0.0));
    res.checks.push_back(checkNear("draws regrowing at d(1-1e-9)", kDraws, regrewBelow, 0.0));
    res.checks.push_back(checkNear("draws regrowing at 0.9 d", kDraws, regrewAtNine, 0.0));
    res.checks.push_back(checkNear("closed form (2,2,1,1)", 4.0, stampacchiaVanishingLevel(2.0, 2.0, 1.0, 0.0, 1.0),
                                   1e-15));
    res.seconds = secondsSince(start);
    return res;
}

CriterionResult levelSetDiagnostics(const NeckRun& neck) {
    const auto start = Clock::now();
    CriterionResult res{11, "level-set diagnostics A(k) and L^p integral", {}, 0.0};
    const Trajectory& traj = neck.traj;
    const LevelFunctionParams level{0.05, kNeckDelta, 0.0, 10.0};

    const double deltas[] = {kNeckDelta};
    const double c1 = fitConstants(traj, deltas, {}).front().inscribed;
    double gLo = kInf, gHi = 0.0;
    for (const auto& s : traj.snapshots)
        for (double g : speeds(s, {})) {
            gLo = std::min(gLo, std::pow(g, level.sigma - 1.0));
            gHi = std::max(gHi, std::pow(g, level.sigma - 1.0));
        }
    // f_σ ≤ G^{σ-1} C_1 pointwise; the rescaling factor depends on the sign of C_1.
    const double kBound = c1 < 0.0 ? c1 * gLo : c1 * gHi;
    const double kStart = std::max(0.0, kBound);
    std::vector<double> ks;
    for (int j = 0; j <= 10; ++j) ks.push_back(kStart + 0.1 * j * std::max(1.0, std::abs(kBound)));
    const auto a = aOfK(traj, level, ks, {});
    double rise = -kInf, largest = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j > 0) rise = std::max(rise, a[j].second - a[j - 1].second);
        largest = std::max(largest, a[j].second);
    }
    res.checks.push_back(checkAtMost("A(k) nonincreasing", 0.0, rise));
    res.checks.push_back(checkNear("A(k) = 0 past rescaled C1(0.5)", 0.0, largest, 0.0));

    const std::size_t half = firstHalfEnd(traj);
    double firstMax = 0.0, secondMax = 0.0;
    for (std::size_t m = 0; m < traj.snapshots.size(); ++m) {
        const auto f = levelFunction(traj.snapshots[m], level, {});
        const double lp = lpIntegral(traj.snapshots[m], f, level.p);
        (m < half ? firstMax : secondMax) = std::max(m < half ? firstMax : secondMax, lp);
    }
    res.checks.push_back(checkAtMost("L^p integral second half vs 2x first half", 2.0 * firstMax, secondMax));
    res.seconds = secondsSince(start);
    return res;
}

CriterionResult meshRecovery() {
    const auto start = Clock::now();
    CriterionResult res{12, "n=2 icosphere mu r = 1 and sharp MCF bound", {}, 0.0};
    const double r = 1.0;
    FlowState s = makeMeshState(makeIcosphere(r, 4));
    attachMu(s);
    double worst = 0.0;
    for (double m : s.mu->mu) worst = std::max(worst, std::abs(m * r - 1.0));
    res.checks.push_back(checkNear("icosphere max |mu r - 1|", 0.0, worst, 5e-2));

    const PrincipalCurvatures lambda = sphereCurvatures(2, r);
    const double muOverH = (1.0 / r) / scalars(lambda, {}).H;
    res.checks.push_back(checkNear("sphere mu/H", 0.5, muOverH, 1e-15));
    res.checks.push_back(checkAtMost("mu <= (n-1)(n+2)/4 H", (2 - 1.0) * (2 + 2.0) / 4.0, muOverH));
    res.seconds = secondsSince(start);
    return res;
}

std::vector<CriterionResult> runAcceptance(const AcceptanceOptions& options) {
    std::vector<CriterionResult> out;
    out.push_back(sharpCylinderRatio());
    out.push_back(cylindricalConstant());
    out.push_back(umbilicRatio());
    out.push_back(exactSolutionConvergence());
    out.push_back(gradientCheck(options.seed));
    out.push_back(concavityCheck(options.seed + 1));
    out.push_back(azimuthalReduction(options.seed + 2));
    const NeckRun neck = runAcceptanceNeck(options.neckNodes);
    out.push_back(neckSharpnessTrend(neck));
    out.push_back(pinchPreservation(neck));
    out.push_back(stampacchiaOracle(options.seed + 3));
    out.push_back(levelSetDiagnostics(neck));
    out.push_back(meshRecovery());
    return out;
}

} // namespace necksim
