#include "necksim/cli.hpp"

#include "necksim/errors.hpp"
#include "necksim/inradius.hpp"
#include "necksim/io.hpp"
#include "necksim/mesh.hpp"
#include "necksim/verify.hpp"

#include "json.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace necksim::cli {

namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parseValue(std::string_view key, std::string_view text) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("config: key '" + std::string(key) + "' has malformed value '" + std::string(text) + "'");
    return value;
}

bool parseBool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError("config: key '" + std::string(key) + "' expects true or false, got '" + std::string(text) + "'");
}

Command parseCommand(std::string_view text) {
    for (Command c : {Command::Simulate, Command::Verify, Command::Mu, Command::Oracle, Command::Stampacchia})
        if (commandName(c) == text) return c;
    throw ConfigError("config: unknown command '" + std::string(text) + "'");
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

template <class T, class Field>
Setter number(Field field) {
    return [field](RunConfig& c, std::string_view key, std::string_view v) { field(c) = parseValue<T>(key, v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"command", [](RunConfig& c, std::string_view, std::string_view v) { c.command = parseCommand(v); }},
        {"shape",
         [](RunConfig& c, std::string_view, std::string_view v) {
             try {
                 c.shape = parseShapeKind(v);
             } catch (const InvalidInputError& e) {
                 throw ConfigError(std::string("config: ") + e.what());
             }
         }},
        {"n", number<int>([](RunConfig& c) -> int& { return c.n; })},
        {"r", number<double>([](RunConfig& c) -> double& { return c.r; })},
        {"a", number<double>([](RunConfig& c) -> double& { return c.a; })},
        {"b", number<double>([](RunConfig& c) -> double& { return c.b; })},
        {"L", number<double>([](RunConfig& c) -> double& { return c.L; })},
        {"N", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.N; })},
        {"input", [](RunConfig& c, std::string_view, std::string_view v) { c.input = v; }},
        {"kappa", number<double>([](RunConfig& c) -> double& { return c.flow.kappa; })},
        {"dtSafety", number<double>([](RunConfig& c) -> double& { return c.flow.dtSafety; })},
        {"maxCurvatureCap", number<double>([](RunConfig& c) -> double& { return c.flow.maxCurvatureCap; })},
        {"minRadiusFloor", number<double>([](RunConfig& c) -> double& { return c.flow.minRadiusFloor; })},
        {"tEnd", number<double>([](RunConfig& c) -> double& { return c.flow.tEnd; })},
        {"resampleEvery", number<long>([](RunConfig& c) -> long& { return c.flow.resampleEvery; })},
        {"snapshotEvery", number<double>([](RunConfig& c) -> double& { return c.flow.snapshotEvery; })},
        {"beta", number<double>([](RunConfig& c) -> double& { return c.flow.beta; })},
        {"maxSteps", number<long>([](RunConfig& c) -> long& { return c.flow.maxSteps; })},
        {"monitors",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.flow.monitors = parseBool(k, v); }},
        {"sigma", number<double>([](RunConfig& c) -> double& { return c.level.sigma; })},
        {"delta", number<double>([](RunConfig& c) -> double& { return c.level.delta; })},
        {"k", number<double>([](RunConfig& c) -> double& { return c.level.k; })},
        {"p", number<double>([](RunConfig& c) -> double& { return c.level.p; })},
        {"kMin", number<double>([](RunConfig& c) -> double& { return c.kMin; })},
        {"kMax", number<double>([](RunConfig& c) -> double& { return c.kMax; })},
        {"kCount", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.kCount; })},
        {"output", [](RunConfig& c, std::string_view, std::string_view v) { c.output = v; }},
        {"seed",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.seed = parseValue<std::uint64_t>(k, v); }},
        {"perturb", number<double>([](RunConfig& c) -> double& { return c.perturb; })},
        {"alpha", number<double>([](RunConfig& c) -> double& { return c.alpha; })},
        {"gamma", number<double>([](RunConfig& c) -> double& { return c.gamma; })},
        {"C", number<double>([](RunConfig& c) -> double& { return c.C; })},
        {"k0", number<double>([](RunConfig& c) -> double& { return c.k0; })},
        {"phi0", number<double>([](RunConfig& c) -> double& { return c.phi0; })},
    };
    return table;
}

std::pair<std::string_view, std::string_view> splitAssignment(std::string_view line) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("config: expected 'key = value', got '" + std::string(line) + "'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config: empty key in '" + std::string(line) + "'");
    return {key, trim(line.substr(eq + 1))};
}

void apply(RunConfig& config, std::string_view key, std::string_view value) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("config: unknown key '" + std::string(key) + "'");
    it->second(config, key, value);
}

void requireKeys(const std::set<std::string, std::less<>>& seen, Command command,
                 std::initializer_list<std::string_view> keys) {
    for (auto key : keys)
        if (!seen.contains(key))
            throw ConfigError("config: command '" + std::string(commandName(command)) + "' requires key '" +
                              std::string(key) + "'");
}

void validate(const RunConfig& c, const std::set<std::string, std::less<>>& seen) {
    if (!seen.contains("command")) throw ConfigError("config: missing required key 'command'");
    if (c.flow.kappa < 0.0) throw ConfigError("config: kappa must be >= 0");
    if (c.n < 2) throw ConfigError("config: n must be >= 2");
    if (c.N < 32) throw ConfigError("config: N must be >= 32");
    if (c.perturb < 0.0 || c.perturb >= 0.5) throw ConfigError("config: perturb must lie in [0, 0.5)");
    if (c.perturb > 0.0 && !c.seed) throw ConfigError("config: perturb requires seed");
    if (c.output.empty()) throw ConfigError("config: output must not be empty");
    try {
        validateShape(c.modelShape());
        validateLevelParams(c.level);
    } catch (const InvalidInputError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    switch (c.command) {
    case Command::Simulate:
        requireKeys(seen, c.command, {"tEnd"});
        validateFlowConfig(c.flow);
        if (c.kCount < 1 || c.kMax < c.kMin) throw ConfigError("config: need kCount >= 1 and kMax >= kMin");
        break;
    case Command::Stampacchia: requireKeys(seen, c.command, {"alpha", "gamma", "C", "phi0"}); break;
    case Command::Verify:
    case Command::Mu:
    case Command::Oracle: break;
    }
}

fs::path prepareOutput(const RunConfig& c) {
    const fs::path dir(c.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("config: cannot create output directory '" + c.output + "'");
    return dir;
}

std::ofstream openOutput(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("config: cannot write '" + path.string() + "'");
    return out;
}

// Seeded smooth radial perturbation: r *= 1 + amplitude Σ_{k=1..4} u_k cos(2πk x + φ_k) / k²,
// x the node fraction along the profile. Low modes keep the curvature perturbation O(amplitude).
ProfileCurve perturbed(ProfileCurve curve, double amplitude, std::uint64_t seed) {
    constexpr int kModes = 4;
    std::mt19937_64 rng(seed);
    double weight[kModes], phase[kModes];
    for (int k = 0; k < kModes; ++k) {
        weight[k] = uniformDouble(rng, -1.0, 1.0) / ((k + 1.0) * (k + 1.0));
        phase[k] = uniformDouble(rng, 0.0, 2.0 * std::numbers::pi);
    }
    const bool closed = curve.topology == Topology::Closed;
    const auto count = static_cast<double>(closed ? curve.size() - 1 : curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double x = static_cast<double>(i) / count;
        double bump = 0.0;
        for (int k = 0; k < kModes; ++k) bump += weight[k] * std::cos(2.0 * std::numbers::pi * (k + 1) * x + phase[k]);
        curve.nodes[i].r *= 1.0 + amplitude * bump;
    }
    return curve;
}

FlowState initialState(const RunConfig& c) {
    if (!c.input.empty()) {
        const fs::path path(c.input);
        if (path.extension() == ".off") return makeMeshState(readOffFile(c.input));
        std::ifstream in(path);
        if (!in) throw ConfigError("config: cannot read input '" + c.input + "'");
        const FlowState read = readProfileSnapshot(in, c.L);
        return makeProfileState(read.profile());
    }
    const FlowState model = modelState(c.modelShape(), c.N);
    if (c.perturb > 0.0) return makeProfileState(perturbed(model.profile(), c.perturb, *c.seed));
    return model;
}

std::string snapshotName(std::size_t index) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%05zu.csv", index);
    return name;
}

int simulate(const RunConfig& c, std::ostream& out) {
    const fs::path dir = prepareOutput(c);
    const Trajectory traj = run(initialState(c), c.flow);

    for (std::size_t m = 0; m < traj.snapshots.size(); ++m) {
        auto file = openOutput(dir / snapshotName(m));
        writeSnapshot(file, traj.snapshots[m]);
    }
    {
        auto file = openOutput(dir / "series.csv");
        writeSeries(file, traj.series);
    }
    if (traj.snapshots.size() >= 2) {
        std::vector<double> ks;
        for (std::size_t j = 0; j < c.kCount; ++j)
            ks.push_back(c.kCount == 1 ? c.kMin
                                       : c.kMin + (c.kMax - c.kMin) * static_cast<double>(j) /
                                                      static_cast<double>(c.kCount - 1));
        const VelocityParams params{c.flow.kappa};
        const auto areas = aOfK(traj, c.level, ks, params);
        std::vector<LevelRow> rows;
        for (const auto& [k, area] : areas) {
            LevelFunctionParams level = c.level;
            level.k = k;
            double lp = 0.0;
            for (const auto& s : traj.snapshots) lp = std::max(lp, lpIntegral(s, levelFunction(s, level, params), level.p));
            rows.push_back({k, area, lp});
        }
        auto file = openOutput(dir / "levels.csv");
        writeLevels(file, rows);
    }

    out << "stop," << stopReasonName(traj.stop) << '\n'
        << "steps," << traj.steps << '\n'
        << "t," << formatNumber(traj.snapshots.back().t) << '\n'
        << "snapshots," << traj.snapshots.size() << '\n';
    if (traj.stop == StopReason::TwoConvexityLost) {
        out << "error,two-convexity lost at t = " << formatNumber(traj.snapshots.back().t) << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

int verify(const RunConfig& c, std::ostream& out) {
    const fs::path dir = prepareOutput(c);
    AcceptanceOptions options;
    if (c.seed) options.seed = *c.seed;
    const auto results = runAcceptance(options);

    nlohmann::json report;
    report["schemaVersion"] = kReportSchemaVersion;
    report["entries"] = nlohmann::json::array();
    report["criteria"] = nlohmann::json::array();
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.pass();
        report["criteria"].push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass()}, {"seconds", r.seconds}});
        for (const auto& check : r.checks)
            report["entries"].push_back({{"check", "criterion " + std::to_string(r.id) + ": " + check.name},
                                         {"expected", check.expected},
                                         {"actual", check.actual},
                                         {"tol", check.tol},
                                         {"pass", check.pass}});
        out << (r.pass() ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << '\n';
    }
    report["pass"] = ok;
    auto file = openOutput(dir / "verify.json");
    file << report.dump(2) << '\n';
    return ok ? kExitOk : kExitVerification;
}

int mu(const RunConfig& c, std::ostream& out) {
    const fs::path dir = prepareOutput(c);
    const FlowState state = initialState(c);
    const MuField field = computeMu(state);
    auto file = openOutput(dir / "mu.csv");
    file << "node,mu,witness,branch,two_point\n";
    for (std::size_t i = 0; i < field.mu.size(); ++i)
        file << i << ',' << formatNumber(field.mu[i]) << ',' << field.witness[i] << ','
             << (field.branch[i] == MuBranch::Local ? "local" : "two-point") << ','
             << formatNumber(field.twoPoint[i]) << '\n';
    out << "nodes," << field.mu.size() << '\n';
    return kExitOk;
}

int oracle(const RunConfig& c, std::ostream& out) {
    const ModelShape shape = c.modelShape();
    const VelocityParams params{c.flow.kappa};
    const int n = shape.n;
    PrincipalCurvatures lambda;
    double mu = 0.0;
    switch (shape.kind) {
    case ShapeKind::Sphere:
        lambda = PrincipalCurvatures(std::vector<double>(static_cast<std::size_t>(n), 1.0 / shape.radius));
        mu = 1.0 / shape.radius;
        break;
    case ShapeKind::Cylinder: {
        std::vector<double> l(static_cast<std::size_t>(n), 1.0 / shape.radius);
        l[0] = 0.0;
        lambda = PrincipalCurvatures(std::move(l));
        mu = 1.0 / shape.radius;
        break;
    }
    case ShapeKind::CosineNeck: lambda = cosineNeckCurvatures(shape, 0.0); break;
    }
    const CurvatureScalars sc = scalars(lambda, params);
    const double G = gKappa(lambda, params);
    out << "quantity,value\n";
    out << "G," << formatNumber(G) << '\n';
    out << "H," << formatNumber(sc.H) << '\n';
    out << "H/G," << formatNumber(sc.H / G) << '\n';
    if (mu > 0.0) out << "mu/G," << formatNumber(mu / G) << '\n';
    out << "lambda_1/G," << formatNumber(lambda.smallest() / G) << '\n';
    out << "lambda_n/G," << formatNumber(lambda.largest() / G) << '\n';
    if (shape.kind == ShapeKind::Sphere && c.flow.kappa == 0.0)
        out << "extinction_time," << formatNumber(sphereExtinctionTime(n, shape.radius)) << '\n';
    if (shape.kind == ShapeKind::Cylinder && c.flow.kappa == 0.0)
        out << "pinch_time," << formatNumber(cylinderPinchTime(n, shape.radius)) << '\n';
    if (shape.kind == ShapeKind::CosineNeck) out << "waist_radius," << formatNumber(shape.meanRadius - shape.amplitude) << '\n';
    out << "sharp_cylinder_mu/G," << formatNumber(cylinderMuRatio(n)) << '\n';
    out << "sharp_cylinder_H/G," << formatNumber(cylinderHRatio(n)) << '\n';
    out << "sphere_mu/G," << formatNumber(sphereMuRatio(n)) << '\n';
    return kExitOk;
}

int stampacchia(const RunConfig& c, std::ostream& out) {
    out << formatNumber(stampacchiaVanishingLevel(c.alpha, c.gamma, c.C, c.k0, c.phi0)) << '\n';
    return kExitOk;
}

} // namespace

std::string_view commandName(Command command) {
    switch (command) {
    case Command::Simulate: return "simulate";
    case Command::Verify: return "verify";
    case Command::Mu: return "mu";
    case Command::Oracle: return "oracle";
    case Command::Stampacchia: return "stampacchia";
    }
    return "?";
}

ModelShape RunConfig::modelShape() const {
    switch (shape) {
    case ShapeKind::Sphere: return ModelShape::sphere(n, r);
    case ShapeKind::Cylinder: return ModelShape::cylinder(n, r, L);
    case ShapeKind::CosineNeck: return ModelShape::cosineNeck(n, a, b, L);
    }
    throw ConfigError("config: unknown shape");
}

RunConfig parseConfig(std::string_view text, std::span<const std::string> overrides) {
    RunConfig config;
    std::set<std::string, std::less<>> seen;
    std::istringstream lines{std::string(text)};
    for (std::string raw; std::getline(lines, raw);) {
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto [key, value] = splitAssignment(line);
        if (!seen.emplace(key).second) throw ConfigError("config: duplicate key '" + std::string(key) + "'");
        apply(config, key, value);
    }
    for (const auto& item : overrides) {
        const auto [key, value] = splitAssignment(trim(item));
        apply(config, key, value);
        seen.emplace(key);
    }
    validate(config, seen);
    return config;
}

int dispatch(const RunConfig& config, std::ostream& out) {
    switch (config.command) {
    case Command::Simulate: return simulate(config, out);
    case Command::Verify: return verify(config, out);
    case Command::Mu: return mu(config, out);
    case Command::Oracle: return oracle(config, out);
    case Command::Stampacchia: return stampacchia(config, out);
    }
    return kExitConfig;
}

int run(const std::string& configPath, std::span<const std::string> overrides, std::ostream& out, std::ostream& err) {
    try {
        std::ifstream in(configPath);
        if (!in) throw ConfigError("config: cannot read '" + configPath + "'");
        std::stringstream text;
        text << in.rdbuf();
        return dispatch(parseConfig(text.str(), overrides), out);
    } catch (const ConfigError& e) {
        err << "necksim: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "necksim: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace necksim::cli
