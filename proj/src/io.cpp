#include "necksim/io.hpp"

#include "necksim/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace necksim {

std::string formatNumber(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

const char* branchName(MuBranch b) { return b == MuBranch::Local ? "local" : "two-point"; }

void writeMuColumns(std::ostream& out, const FlowState& state, std::size_t i) {
    if (!state.mu) return;
    out << ',' << formatNumber(state.mu->mu[i]) << ',' << state.mu->witness[i] << ','
        << branchName(state.mu->branch[i]);
}

std::vector<std::string> splitCsv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        cells.push_back(cell);
    }
    return cells;
}

double parseNumber(const std::string& text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw InvalidInputError("snapshot: not a number: '" + text + "'");
    return v;
}

} // namespace

void writeProfileSnapshot(std::ostream& out, const FlowState& state) {
    const ProfileCurve& c = state.profile();
    out << "s,z,r,nu_z,nu_r";
    for (int k = 1; k <= c.n; ++k) out << ",lambda_" << k;
    out << ",areaWeight";
    if (state.mu) out << ",mu,witness,branch";
    out << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) {
        const NodeGeometry& g = state.perNode[i];
        out << formatNumber(g.s) << ',' << formatNumber(c.nodes[i].z) << ',' << formatNumber(c.nodes[i].r) << ','
            << formatNumber(g.normal[0]) << ',' << formatNumber(g.normal[1]);
        for (double l : g.curvatures.values()) out << ',' << formatNumber(l);
        out << ',' << formatNumber(g.areaWeight);
        writeMuColumns(out, state, i);
        out << '\n';
    }
}

FlowState readProfileSnapshot(std::istream& in, std::optional<double> period) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInputError("snapshot: empty input");
    const auto header = splitCsv(line);
    if (header.size() < 8 || header[0] != "s" || header[1] != "z" || header[2] != "r" || header[3] != "nu_z" ||
        header[4] != "nu_r")
        throw InvalidInputError("snapshot: unexpected header");
    int n = 0;
    while (5 + n < static_cast<int>(header.size()) && header[static_cast<std::size_t>(5 + n)] == "lambda_" + std::to_string(n + 1))
        ++n;
    if (n < 2 || header[static_cast<std::size_t>(5 + n)] != "areaWeight")
        throw InvalidInputError("snapshot: expected lambda_1..lambda_n then areaWeight");
    const std::size_t columns = static_cast<std::size_t>(6 + n);

    ProfileCurve curve;
    curve.n = n;
    std::vector<NodeGeometry> geom;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto cells = splitCsv(line);
        if (cells.size() < columns) throw InvalidInputError("snapshot: short row");
        NodeGeometry g;
        g.s = parseNumber(cells[0]);
        const double z = parseNumber(cells[1]);
        const double r = parseNumber(cells[2]);
        curve.nodes.push_back({z, r});
        g.position = {z, r, 0.0};
        g.normal = {parseNumber(cells[3]), parseNumber(cells[4]), 0.0};
        std::vector<double> lambda;
        for (int k = 0; k < n; ++k) lambda.push_back(parseNumber(cells[static_cast<std::size_t>(5 + k)]));
        g.curvatures = PrincipalCurvatures(lambda);
        g.areaWeight = parseNumber(cells[static_cast<std::size_t>(5 + n)]);
        // Recover the meridian/rotational split: the rotational value is ν_r / r.
        if (r > 0.0) {
            const double rot = g.normal[1] / r;
            const bool firstIsRot = std::abs(lambda.front() - rot) <= std::abs(lambda.back() - rot);
            const auto& sorted = g.curvatures.values();
            if (n == 2) {
                g.lambdaRotational = firstIsRot ? sorted[0] : sorted[1];
                g.lambdaMeridian = firstIsRot ? sorted[1] : sorted[0];
            } else {
                const bool meridianLast = sorted[0] == sorted[1];
                g.lambdaMeridian = meridianLast ? sorted.back() : sorted.front();
                g.lambdaRotational = meridianLast ? sorted.front() : sorted.back();
            }
        } else {
            g.lambdaMeridian = g.lambdaRotational = g.curvatures[0];
        }
        geom.push_back(std::move(g));
    }
    if (curve.nodes.size() < 3) throw InvalidInputError("snapshot: too few rows");
    if (curve.nodes.front().r == 0.0 && curve.nodes.back().r == 0.0) {
        curve.topology = Topology::Closed;
    } else {
        if (!period) throw InvalidInputError("snapshot: periodic profile needs its period");
        curve.topology = Topology::PeriodicNeck;
        curve.period = *period;
    }
    validateProfile(curve);
    FlowState state;
    state.surface = std::move(curve);
    state.perNode = std::move(geom);
    return state;
}

void writeMeshSnapshot(std::ostream& out, const FlowState& state) {
    const TriangleMesh& m = state.mesh();
    out << "x,y,z,nu_x,nu_y,nu_z,lambda_1,lambda_2,areaWeight";
    if (state.mu) out << ",mu,witness,branch";
    out << '\n';
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
        const NodeGeometry& g = state.perNode[i];
        for (int k = 0; k < 3; ++k) out << formatNumber(m.vertices[i][k]) << ',';
        for (int k = 0; k < 3; ++k) out << formatNumber(g.normal[k]) << ',';
        out << formatNumber(g.curvatures[0]) << ',' << formatNumber(g.curvatures[1]) << ','
            << formatNumber(g.areaWeight);
        writeMuColumns(out, state, i);
        out << '\n';
    }
}

void writeSnapshot(std::ostream& out, const FlowState& state) {
    if (state.isProfile())
        writeProfileSnapshot(out, state);
    else
        writeMeshSnapshot(out, state);
}

void writeSeries(std::ostream& out, std::span<const MonitorSample> series) {
    out << kSeriesHeader << '\n';
    for (const auto& s : series) {
        out << formatNumber(s.t) << ',' << formatNumber(s.supMuOverG) << ',' << formatNumber(s.supHOverG) << ','
            << formatNumber(s.infLambda1OverG) << ',' << formatNumber(s.supLambdaNOverG) << ','
            << formatNumber(s.supGradHOverG2) << ',' << formatNumber(s.supG) << ',' << formatNumber(s.area) << ','
            << formatNumber(s.minPinchEig) << '\n';
    }
}

void writeLevels(std::ostream& out, std::span<const LevelRow> rows) {
    out << "k,A_k,lp_integral\n";
    for (const auto& r : rows)
        out << formatNumber(r.k) << ',' << formatNumber(r.aOfK) << ',' << formatNumber(r.lpIntegral) << '\n';
}

} // namespace necksim
