#include "necksim/mesh.hpp"

#include "necksim/errors.hpp"
#include "necksim/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace necksim {

namespace {

Eigen::Vector3d faceCross(const TriangleMesh& m, const std::array<int, 3>& f) {
    const Eigen::Vector3d& a = m.vertices[static_cast<std::size_t>(f[0])];
    const Eigen::Vector3d& b = m.vertices[static_cast<std::size_t>(f[1])];
    const Eigen::Vector3d& c = m.vertices[static_cast<std::size_t>(f[2])];
    return (b - a).cross(c - a);
}

// Least-squares w = a u^2 + b uv + c v^2 + d u + e v over the ring, in the
// frame (t1, t2, n) centred at p.
Eigen::VectorXd fitQuadric(const TriangleMesh& mesh, const std::vector<int>& ring, const Eigen::Vector3d& p,
                           const Eigen::Vector3d& n, const Eigen::Vector3d& t1, const Eigen::Vector3d& t2,
                           std::size_t vertex) {
    Eigen::MatrixXd A(static_cast<Eigen::Index>(ring.size()), 5);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(ring.size()));
    for (std::size_t k = 0; k < ring.size(); ++k) {
        const Eigen::Vector3d d = mesh.vertices[static_cast<std::size_t>(ring[k])] - p;
        const double u = d.dot(t1), w = d.dot(t2);
        const auto row = static_cast<Eigen::Index>(k);
        A.row(row) << u * u, u * w, w * w, u, w;
        rhs(row) = d.dot(n);
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < 5) throw CurvatureFitError(vertex, "quadric fit is rank deficient");
    return qr.solve(rhs);
}

} // namespace

void validateMesh(const TriangleMesh& mesh) {
    const auto V = static_cast<int>(mesh.vertices.size());
    if (V < 4 || mesh.faces.size() < 4) throw InvalidInputError("mesh too small to be closed");

    Eigen::Vector3d lo = mesh.vertices.front(), hi = mesh.vertices.front();
    for (const auto& p : mesh.vertices) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double diag2 = (hi - lo).squaredNorm();

    std::map<std::pair<int, int>, int> directed;
    double signedVolume = 0.0;
    for (std::size_t fi = 0; fi < mesh.faces.size(); ++fi) {
        const auto& f = mesh.faces[fi];
        for (int k = 0; k < 3; ++k) {
            if (f[k] < 0 || f[k] >= V) throw InvalidInputError("mesh face references a missing vertex");
            ++directed[{f[k], f[(k + 1) % 3]}];
        }
        const Eigen::Vector3d cr = faceCross(mesh, f);
        if (!(0.5 * cr.norm() > 1e-12 * diag2))
            throw InvalidInputError("degenerate mesh face " + std::to_string(fi));
        signedVolume += mesh.vertices[static_cast<std::size_t>(f[0])].dot(cr) / 6.0;
    }
    for (const auto& [edge, count] : directed) {
        if (count != 1) throw InvalidInputError("mesh orientation is inconsistent");
        if (!directed.contains({edge.second, edge.first}))
            throw InvalidInputError("mesh is not closed: boundary edge found");
    }
    if (!(signedVolume > 0.0)) throw InvalidInputError("mesh faces are not oriented outward");
}

std::vector<std::vector<int>> vertexNeighbors(const TriangleMesh& mesh) {
    std::vector<std::vector<int>> nb(mesh.vertices.size());
    for (const auto& f : mesh.faces)
        for (int k = 0; k < 3; ++k) {
            nb[static_cast<std::size_t>(f[k])].push_back(f[(k + 1) % 3]);
            nb[static_cast<std::size_t>(f[k])].push_back(f[(k + 2) % 3]);
        }
    for (auto& list : nb) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return nb;
}

std::vector<int> kRing(const std::vector<std::vector<int>>& neighbors, int v, int rings) {
    std::vector<int> frontier{v};
    std::vector<int> seen{v};
    for (int ring = 0; ring < rings; ++ring) {
        std::vector<int> next;
        for (int u : frontier)
            for (int w : neighbors[static_cast<std::size_t>(u)])
                if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
                    seen.push_back(w);
                    next.push_back(w);
                }
        frontier = std::move(next);
    }
    seen.erase(seen.begin());
    std::sort(seen.begin(), seen.end());
    return seen;
}

double meshArea(const TriangleMesh& mesh) {
    CompensatedSum sum;
    for (const auto& f : mesh.faces) sum.add(0.5 * faceCross(mesh, f).norm());
    return sum.value();
}

std::vector<NodeGeometry> meshGeometry(const TriangleMesh& mesh) {
    validateMesh(mesh);
    const std::size_t V = mesh.vertices.size();
    std::vector<Eigen::Vector3d> normals(V, Eigen::Vector3d::Zero());
    std::vector<double> area(V, 0.0);
    for (const auto& f : mesh.faces) {
        const Eigen::Vector3d cr = faceCross(mesh, f);
        const double a = 0.5 * cr.norm();
        for (int k : f) {
            normals[static_cast<std::size_t>(k)] += cr;
            area[static_cast<std::size_t>(k)] += a / 3.0;
        }
    }
    const auto nb = vertexNeighbors(mesh);

    std::vector<NodeGeometry> out(V);
    parallelFor(V, [&](std::size_t v) {
        NodeGeometry& g = out[v];
        const Eigen::Vector3d& p = mesh.vertices[v];
        g.position = p;
        g.normal = normals[v].normalized();
        g.areaWeight = area[v];

        const std::vector<int> ring = kRing(nb, static_cast<int>(v), 2);
        if (ring.size() < 5) throw CurvatureFitError(v, "2-ring has fewer than 5 vertices");

        // Fit in the frame of the area-weighted normal, then once more in the
        // frame of the fitted surface normal; the second pass sets the normal.
        Eigen::Vector3d n = g.normal;
        Eigen::VectorXd c;
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::Vector3d helper =
                std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
            const Eigen::Vector3d t1 = (helper - helper.dot(n) * n).normalized();
            const Eigen::Vector3d t2 = n.cross(t1);
            c = fitQuadric(mesh, ring, p, n, t1, t2, v);
            if (pass == 0) n = (n - c(3) * t1 - c(4) * t2).normalized();
        }
        g.normal = n;

        const double wu = c(3), wv = c(4);
        Eigen::Matrix2d first, second;
        first << 1 + wu * wu, wu * wv, wu * wv, 1 + wv * wv;
        const double scale = std::sqrt(1 + wu * wu + wv * wv);
        second << 2 * c(0), c(1), c(1), 2 * c(2);
        second /= scale;
        // Outward normal: a surface bending away from it has positive curvature.
        const Eigen::Matrix2d shape = -first.inverse() * second;
        const Eigen::EigenSolver<Eigen::Matrix2d> es(shape);
        const Eigen::Vector2d ev = es.eigenvalues().real();
        g.curvatures = PrincipalCurvatures({ev(0), ev(1)});
    });
    return out;
}

TriangleMesh makeIcosphere(double radius, int subdivisions) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    TriangleMesh m;
    m.vertices = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
                  {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
                  {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (auto& v : m.vertices) v.normalize();
    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
            if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
            const Eigen::Vector3d p =
                (m.vertices[static_cast<std::size_t>(a)] + m.vertices[static_cast<std::size_t>(b)]).normalized();
            m.vertices.push_back(p);
            const int idx = static_cast<int>(m.vertices.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> faces;
        faces.reserve(m.faces.size() * 4);
        for (const auto& f : m.faces) {
            const int a = mid(f[0], f[1]), b = mid(f[1], f[2]), c = mid(f[2], f[0]);
            faces.push_back({f[0], a, c});
            faces.push_back({f[1], b, a});
            faces.push_back({f[2], c, b});
            faces.push_back({a, b, c});
        }
        m.faces = std::move(faces);
    }
    for (auto& v : m.vertices) v *= radius;
    return m;
}

TriangleMesh makeTorus(double majorRadius, double tubeRadius, int majorSegments, int tubeSegments) {
    if (majorSegments < 3 || tubeSegments < 3 || !(majorRadius > tubeRadius) || !(tubeRadius > 0.0))
        throw InvalidInputError("invalid torus parameters");
    TriangleMesh m;
    const double twoPi = 2.0 * std::numbers::pi;
    for (int i = 0; i < majorSegments; ++i) {
        const double u = twoPi * i / majorSegments;
        for (int j = 0; j < tubeSegments; ++j) {
            const double v = twoPi * j / tubeSegments;
            const double rho = majorRadius + tubeRadius * std::cos(v);
            m.vertices.emplace_back(rho * std::cos(u), rho * std::sin(u), tubeRadius * std::sin(v));
        }
    }
    auto idx = [&](int i, int j) { return (i % majorSegments) * tubeSegments + (j % tubeSegments); };
    for (int i = 0; i < majorSegments; ++i)
        for (int j = 0; j < tubeSegments; ++j) {
            const int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
            m.faces.push_back({a, b, c});
            m.faces.push_back({a, c, d});
        }
    return m;
}

TriangleMesh readOff(std::istream& in) {
    auto nextLine = [&](std::string& line) {
        while (std::getline(in, line)) {
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    std::string line;
    if (!nextLine(line)) throw InvalidInputError("OFF: empty input");
    std::istringstream header(line);
    std::string magic;
    header >> magic;
    if (magic != "OFF") throw InvalidInputError("OFF: missing OFF header");
    long nv = -1, nf = -1, ne = 0;
    if (!(header >> nv)) {
        if (!nextLine(line)) throw InvalidInputError("OFF: missing counts");
        std::istringstream counts(line);
        counts >> nv >> nf >> ne;
    } else {
        header >> nf >> ne;
    }
    if (nv < 0 || nf < 0) throw InvalidInputError("OFF: bad counts");
    TriangleMesh m;
    m.vertices.reserve(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        if (!nextLine(line)) throw InvalidInputError("OFF: truncated vertex list");
        std::istringstream row(line);
        double x, y, z;
        if (!(row >> x >> y >> z)) throw InvalidInputError("OFF: bad vertex row");
        m.vertices.emplace_back(x, y, z);
    }
    for (long i = 0; i < nf; ++i) {
        if (!nextLine(line)) throw InvalidInputError("OFF: truncated face list");
        std::istringstream row(line);
        int k, a, b, c;
        if (!(row >> k >> a >> b >> c) || k != 3) throw InvalidInputError("OFF: only triangle faces are supported");
        m.faces.push_back({a, b, c});
    }
    return m;
}

TriangleMesh readOffFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open mesh file " + path);
    return readOff(in);
}

void writeOff(std::ostream& out, const TriangleMesh& mesh) {
    const auto old = out.precision(17);
    out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
    for (const auto& v : mesh.vertices) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    out.precision(old);
}

FlowState makeMeshState(TriangleMesh mesh, double t, long step) {
    FlowState state;
    state.perNode = meshGeometry(mesh);
    state.surface = std::move(mesh);
    state.t = t;
    state.step = step;
    return state;
}

} // namespace necksim
