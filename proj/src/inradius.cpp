#include "necksim/inradius.hpp"

#include "necksim/errors.hpp"
#include "necksim/mesh.hpp"
#include "necksim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace necksim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct ProfileContext {
    const ProfileCurve& curve;
    const std::vector<NodeGeometry>& geom;
    bool periodic;
    double totalLength;
    double exclusion;

    explicit ProfileContext(const FlowState& state)
        : curve(state.profile()), geom(state.perNode),
          periodic(curve.topology == Topology::PeriodicNeck), totalLength(curve.totalLength()),
          exclusion(kNearExclusionSpacings * totalLength / static_cast<double>(curve.segmentCount())) {
        if (curve.size() < 8) throw InsufficientResolutionError("mu needs at least 8 profile nodes");
        if (geom.size() != curve.size()) throw InvalidInputError("mu: geometry does not match the profile");
    }

    int imageBegin() const { return periodic ? -1 : 0; }
    int imageEnd() const { return periodic ? 1 : 0; }

    bool excluded(std::size_t i, std::size_t j, int image) const {
        const double d = std::abs(geom[j].s + image * totalLength - geom[i].s);
        return d < exclusion;
    }
};

struct Best {
    double value = kNegInf;
    std::ptrdiff_t witness = -1;
};

Best twoPointProfile(const ProfileContext& ctx, std::size_t i) {
    const ProfileNode& x = ctx.curve.nodes[i];
    const double nz = ctx.geom[i].normal[0];
    const double nr = ctx.geom[i].normal[1];
    Best best;
    for (std::size_t j = 0; j < ctx.curve.size(); ++j) {
        const ProfileNode& y = ctx.curve.nodes[j];
        for (int image = ctx.imageBegin(); image <= ctx.imageEnd(); ++image) {
            if (ctx.excluded(i, j, image)) continue;
            const double dz = y.z + image * ctx.curve.period - x.z;
            for (const double c : {1.0, -1.0}) {
                const double den = y.r * y.r + x.r * x.r - 2.0 * y.r * x.r * c + dz * dz;
                if (!(den > 0.0)) continue;
                const double q = -2.0 * ((y.r * c - x.r) * nr + dz * nz) / den;
                if (q > best.value) {
                    best.value = q;
                    best.witness = static_cast<std::ptrdiff_t>(j);
                }
            }
        }
    }
    return best;
}

void combine(MuField& field, std::size_t i, double lambdaN, const Best& best) {
    field.twoPoint[i] = best.value;
    if (best.value > lambdaN) {
        field.mu[i] = best.value;
        field.witness[i] = best.witness;
        field.branch[i] = MuBranch::TwoPoint;
    } else {
        field.mu[i] = lambdaN;
        field.witness[i] = -1;
        field.branch[i] = MuBranch::Local;
    }
}

MuField emptyField(std::size_t n) {
    MuField f;
    f.mu.resize(n);
    f.witness.resize(n);
    f.branch.resize(n);
    f.twoPoint.resize(n);
    return f;
}

} // namespace

MuField muProfile(const FlowState& state) {
    const ProfileContext ctx(state);
    MuField field = emptyField(ctx.curve.size());
    parallelFor(ctx.curve.size(), [&](std::size_t i) {
        combine(field, i, ctx.geom[i].curvatures.largest(), twoPointProfile(ctx, i));
    });
    return field;
}

double muAzimuthBruteforce(const FlowState& state, std::size_t i, std::size_t phiSamples) {
    const ProfileContext ctx(state);
    if (i >= ctx.curve.size() || phiSamples == 0) throw InvalidInputError("azimuth brute force: bad arguments");
    const ProfileNode& xn = ctx.curve.nodes[i];
    const Eigen::Vector3d x(xn.z, xn.r, 0.0);
    const Eigen::Vector3d nu(ctx.geom[i].normal[0], ctx.geom[i].normal[1], 0.0);
    std::vector<double> cosPhi(phiSamples), sinPhi(phiSamples);
    for (std::size_t k = 0; k < phiSamples; ++k) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(phiSamples);
        cosPhi[k] = std::cos(phi);
        sinPhi[k] = std::sin(phi);
    }
    double best = kNegInf;
    for (std::size_t j = 0; j < ctx.curve.size(); ++j) {
        const ProfileNode& yn = ctx.curve.nodes[j];
        for (int image = ctx.imageBegin(); image <= ctx.imageEnd(); ++image) {
            if (ctx.excluded(i, j, image)) continue;
            for (std::size_t k = 0; k < phiSamples; ++k) {
                const Eigen::Vector3d y(yn.z + image * ctx.curve.period, yn.r * cosPhi[k], yn.r * sinPhi[k]);
                const Eigen::Vector3d d = y - x;
                const double d2 = d.squaredNorm();
                if (!(d2 > 0.0)) continue;
                best = std::max(best, -2.0 * d.dot(nu) / d2);
            }
        }
    }
    return best;
}

namespace {

struct Box {
    Eigen::Vector3d lo, hi;

    double squaredDistance(const Eigen::Vector3d& p) const {
        const Eigen::Vector3d below = (lo - p).cwiseMax(0.0);
        const Eigen::Vector3d above = (p - hi).cwiseMax(0.0);
        return (below + above).squaredNorm();
    }
};

class VertexTree {
public:
    explicit VertexTree(const std::vector<Eigen::Vector3d>& points) : points_(points) {
        order_.resize(points.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
        build(0, order_.size());
    }

    template <class Visit>
    void query(const Eigen::Vector3d& p, const double& bound, Visit&& visit) const {
        std::vector<int> stack{0};
        while (!stack.empty()) {
            const Node& node = nodes_[static_cast<std::size_t>(stack.back())];
            stack.pop_back();
            // Q <= 2/|y - x| < bound for every vertex in a box farther than 2/bound.
            if (bound > 0.0) {
                const double reach = 2.0 / bound;
                if (node.box.squaredDistance(p) > reach * reach) continue;
            }
            if (node.left < 0) {
                for (std::size_t k = node.begin; k < node.end; ++k) visit(order_[k]);
                continue;
            }
            const auto& l = nodes_[static_cast<std::size_t>(node.left)];
            const auto& r = nodes_[static_cast<std::size_t>(node.right)];
            // Nearer child on top of the stack.
            if (l.box.squaredDistance(p) <= r.box.squaredDistance(p)) {
                stack.push_back(node.right);
                stack.push_back(node.left);
            } else {
                stack.push_back(node.left);
                stack.push_back(node.right);
            }
        }
    }

private:
    struct Node {
        Box box;
        std::size_t begin = 0, end = 0;
        int left = -1, right = -1;
    };

    static constexpr std::size_t kLeafSize = 8;

    int build(std::size_t begin, std::size_t end) {
        Node node;
        node.begin = begin;
        node.end = end;
        node.box.lo = node.box.hi = points_[static_cast<std::size_t>(order_[begin])];
        for (std::size_t k = begin; k < end; ++k) {
            const auto& q = points_[static_cast<std::size_t>(order_[k])];
            node.box.lo = node.box.lo.cwiseMin(q);
            node.box.hi = node.box.hi.cwiseMax(q);
        }
        const int index = static_cast<int>(nodes_.size());
        nodes_.push_back(node);
        if (end - begin <= kLeafSize) return index;
        Eigen::Index axis;
        (node.box.hi - node.box.lo).maxCoeff(&axis);
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                         order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         order_.begin() + static_cast<std::ptrdiff_t>(end), [&](int a, int b) {
                             const double pa = points_[static_cast<std::size_t>(a)][axis];
                             const double pb = points_[static_cast<std::size_t>(b)][axis];
                             return pa < pb || (pa == pb && a < b);
                         });
        const int left = build(begin, mid);
        const int right = build(mid, end);
        nodes_[static_cast<std::size_t>(index)].left = left;
        nodes_[static_cast<std::size_t>(index)].right = right;
        return index;
    }

    const std::vector<Eigen::Vector3d>& points_;
    std::vector<int> order_;
    std::vector<Node> nodes_;
};

} // namespace

MuField muMesh(const FlowState& state, MeshMuBackend backend) {
    const TriangleMesh& mesh = state.mesh();
    validateMesh(mesh);
    const std::size_t V = mesh.vertices.size();
    if (state.perNode.size() != V) throw InvalidInputError("mu: geometry does not match the mesh");
    const auto neighbors = vertexNeighbors(mesh);
    MuField field = emptyField(V);

    if (backend == MeshMuBackend::BruteForce) {
        parallelFor(V, [&](std::size_t i) {
            const auto ring = kRing(neighbors, static_cast<int>(i), 2);
            const Eigen::Vector3d& x = mesh.vertices[i];
            const Eigen::Vector3d& nu = state.perNode[i].normal;
            Best best;
            for (std::size_t j = 0; j < V; ++j) {
                if (j == i || std::binary_search(ring.begin(), ring.end(), static_cast<int>(j))) continue;
                const Eigen::Vector3d d = mesh.vertices[j] - x;
                const double q = -2.0 * d.dot(nu) / d.squaredNorm();
                if (q > best.value) {
                    best.value = q;
                    best.witness = static_cast<std::ptrdiff_t>(j);
                }
            }
            combine(field, i, state.perNode[i].curvatures.largest(), best);
        });
        return field;
    }

    const VertexTree tree(mesh.vertices);
    parallelFor(V, [&](std::size_t i) {
        const auto ring = kRing(neighbors, static_cast<int>(i), 2);
        const Eigen::Vector3d& x = mesh.vertices[i];
        const Eigen::Vector3d& nu = state.perNode[i].normal;
        const double lambdaN = state.perNode[i].curvatures.largest();
        // Running best starts at the local branch; ties keep the local branch
        // or the lower witness, matching the brute-force ordering.
        double bound = lambdaN;
        std::ptrdiff_t witness = -1;
        Best found;
        tree.query(x, bound, [&](int j) {
            const auto ju = static_cast<std::size_t>(j);
            if (ju == i || std::binary_search(ring.begin(), ring.end(), j)) return;
            const Eigen::Vector3d d = mesh.vertices[ju] - x;
            const double q = -2.0 * d.dot(nu) / d.squaredNorm();
            if (q > found.value || (q == found.value && j < found.witness)) {
                found.value = q;
                found.witness = j;
            }
            if (q > bound || (q == bound && witness >= 0 && j < witness)) {
                bound = q;
                witness = j;
            }
        });
        field.twoPoint[i] = found.value;
        field.mu[i] = bound;
        field.witness[i] = witness;
        field.branch[i] = witness >= 0 ? MuBranch::TwoPoint : MuBranch::Local;
    });
    return field;
}

MuField computeMu(const FlowState& state) {
    return state.isProfile() ? muProfile(state) : muMesh(state);
}

void attachMu(FlowState& state) { state.mu = computeMu(state); }

} // namespace necksim
