#include "necksim/geometry.hpp"

#include "necksim/errors.hpp"
#include "necksim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace necksim {

std::size_t ProfileCurve::segmentCount() const noexcept {
    if (nodes.empty()) return 0;
    return topology == Topology::Closed ? nodes.size() - 1 : nodes.size();
}

double ProfileCurve::segmentLength(std::size_t i) const {
    const ProfileNode& a = nodes[i];
    ProfileNode b;
    if (i + 1 < nodes.size()) {
        b = nodes[i + 1];
    } else {
        b = nodes.front();
        b.z += period;
    }
    return std::hypot(b.z - a.z, b.r - a.r);
}

double ProfileCurve::totalLength() const {
    CompensatedSum sum;
    for (std::size_t i = 0; i < segmentCount(); ++i) sum.add(segmentLength(i));
    return sum.value();
}

int FlowState::dimension() const {
    if (isProfile()) return profile().n;
    return 2;
}

double unitSphereArea(int k) {
    const double half = 0.5 * (k + 1);
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

void validateProfile(const ProfileCurve& curve) {
    if (curve.n < 2) throw InvalidInputError("profile dimension n must be >= 2");
    const std::size_t N = curve.size();
    if (N < 3) throw InvalidInputError("profile needs at least 3 nodes");
    if (curve.topology == Topology::Closed) {
        if (curve.nodes.front().r != 0.0 || curve.nodes.back().r != 0.0)
            throw DegenerateGeometryError("closed profile must start and end on the axis");
        if (!(curve.nodes.front().z < curve.nodes.back().z))
            throw InvalidInputError("closed profile must run from the lower to the upper pole");
    } else {
        if (!(curve.period > 0.0)) throw InvalidInputError("periodic profile needs period > 0");
        for (std::size_t i = 0; i + 1 < N; ++i)
            if (!(curve.nodes[i + 1].z > curve.nodes[i].z))
                throw InvalidInputError("periodic profile z must be strictly increasing");
        if (!(curve.nodes.front().z + curve.period > curve.nodes.back().z))
            throw InvalidInputError("periodic profile exceeds one period");
    }
    const std::size_t first = curve.topology == Topology::Closed ? 1 : 0;
    const std::size_t last = curve.topology == Topology::Closed ? N - 1 : N;
    for (std::size_t i = first; i < last; ++i) {
        if (!(curve.nodes[i].r > 0.0)) {
            std::ostringstream os;
            os << "degenerate geometry: r = " << curve.nodes[i].r << " at interior node " << i;
            throw DegenerateGeometryError(os.str());
        }
    }
    double hmin = std::numeric_limits<double>::infinity();
    double hmax = 0.0;
    for (std::size_t i = 0; i < curve.segmentCount(); ++i) {
        const double h = curve.segmentLength(i);
        hmin = std::min(hmin, h);
        hmax = std::max(hmax, h);
    }
    if (!(hmin > 0.0) || hmax / hmin > kMaxSpacingRatio) {
        std::ostringstream os;
        os << "node spacing ratio " << hmax / hmin << " exceeds " << kMaxSpacingRatio << "; resample required";
        throw ResampleRequiredError(os.str());
    }
}

namespace {

struct Stencil {
    ProfileNode prev, next;
    double hm, hp;
};

// Neighbours of node i, with ghost nodes mirrored across the axis at the poles
// of a closed curve and shifted by the period for a periodic one.
Stencil stencilAt(const ProfileCurve& c, std::size_t i) {
    const std::size_t N = c.size();
    Stencil st;
    if (c.topology == Topology::Closed) {
        if (i == 0) {
            st.next = c.nodes[1];
            st.prev = {c.nodes[1].z, -c.nodes[1].r};
        } else if (i == N - 1) {
            st.prev = c.nodes[N - 2];
            st.next = {c.nodes[N - 2].z, -c.nodes[N - 2].r};
        } else {
            st.prev = c.nodes[i - 1];
            st.next = c.nodes[i + 1];
        }
    } else {
        if (i == 0) {
            st.prev = c.nodes[N - 1];
            st.prev.z -= c.period;
        } else {
            st.prev = c.nodes[i - 1];
        }
        if (i == N - 1) {
            st.next = c.nodes[0];
            st.next.z += c.period;
        } else {
            st.next = c.nodes[i + 1];
        }
    }
    const ProfileNode& x = c.nodes[i];
    st.hm = std::hypot(x.z - st.prev.z, x.r - st.prev.r);
    st.hp = std::hypot(st.next.z - x.z, st.next.r - x.r);
    return st;
}

struct Derivs {
    double d1, d2;
};

Derivs centralDerivs(double fm, double f0, double fp, double hm, double hp) {
    const double sum = hm + hp;
    const double d1 = -hp / (hm * sum) * fm + (hp - hm) / (hm * hp) * f0 + hm / (hp * sum) * fp;
    const double d2 = 2.0 * (fm / (hm * sum) - f0 / (hm * hp) + fp / (hp * sum));
    return {d1, d2};
}

} // namespace

std::vector<NodeGeometry> profileGeometry(const ProfileCurve& curve) {
    validateProfile(curve);
    const std::size_t N = curve.size();
    const bool closed = curve.topology == Topology::Closed;
    const double omega = unitSphereArea(curve.n - 1);

    std::vector<double> s(N, 0.0);
    for (std::size_t i = 1; i < N; ++i) s[i] = s[i - 1] + curve.segmentLength(i - 1);

    std::vector<NodeGeometry> out(N);
    parallelFor(N, [&](std::size_t i) {
        const ProfileNode& x = curve.nodes[i];
        const Stencil st = stencilAt(curve, i);
        const Derivs z = centralDerivs(st.prev.z, x.z, st.next.z, st.hm, st.hp);
        const Derivs r = centralDerivs(st.prev.r, x.r, st.next.r, st.hm, st.hp);
        const double speed = std::hypot(z.d1, r.d1);

        NodeGeometry& g = out[i];
        g.s = s[i];
        g.position = {x.z, x.r, 0.0};
        g.normal = {-r.d1 / speed, z.d1 / speed, 0.0};
        g.lambdaMeridian = (r.d1 * z.d2 - z.d1 * r.d2) / (speed * speed * speed);
        const bool pole = closed && (i == 0 || i == N - 1);
        g.lambdaRotational = pole ? g.lambdaMeridian : g.normal[1] / x.r;

        std::vector<double> lambda(static_cast<std::size_t>(curve.n), g.lambdaRotational);
        lambda[0] = g.lambdaMeridian;
        g.curvatures = PrincipalCurvatures(std::move(lambda));

        double ds;
        if (closed && i == 0)
            ds = 0.5 * st.hp;
        else if (closed && i == N - 1)
            ds = 0.5 * st.hm;
        else
            ds = 0.5 * (st.hm + st.hp);
        g.areaWeight = omega * std::pow(x.r, curve.n - 1) * ds;
    });
    return out;
}

namespace {

struct HermiteData {
    std::vector<double> u;  // knot parameters, including the wrap knot for periodic curves
    std::vector<double> z, r, dz, dr;
};

HermiteData hermiteData(const ProfileCurve& c) {
    const std::size_t N = c.size();
    const bool closed = c.topology == Topology::Closed;
    const std::size_t K = closed ? N : N + 1;
    HermiteData d;
    d.u.resize(K);
    d.z.resize(K);
    d.r.resize(K);
    d.dz.resize(K);
    d.dr.resize(K);
    d.u[0] = 0.0;
    for (std::size_t i = 1; i < K; ++i) d.u[i] = d.u[i - 1] + c.segmentLength(i - 1);
    for (std::size_t i = 0; i < N; ++i) {
        const Stencil st = stencilAt(c, i);
        d.z[i] = c.nodes[i].z;
        d.r[i] = c.nodes[i].r;
        d.dz[i] = centralDerivs(st.prev.z, d.z[i], st.next.z, st.hm, st.hp).d1;
        d.dr[i] = centralDerivs(st.prev.r, d.r[i], st.next.r, st.hm, st.hp).d1;
    }
    if (!closed) {
        d.z[N] = d.z[0] + c.period;
        d.r[N] = d.r[0];
        d.dz[N] = d.dz[0];
        d.dr[N] = d.dr[0];
    }
    return d;
}

double hermite(double f0, double f1, double d0, double d1, double h, double t) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * f1 +
           (t3 - t2) * h * d1;
}

} // namespace

ProfileCurve resample(const ProfileCurve& curve, double targetSpacing) {
    validateProfile(curve);
    const double total = curve.totalLength();
    if (!(targetSpacing > 0.0) || targetSpacing > 0.5 * total)
        throw InvalidInputError("resample: target spacing must be positive and at most half the curve length");

    const HermiteData d = hermiteData(curve);
    const std::size_t M = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(total / targetSpacing)));
    const bool closed = curve.topology == Topology::Closed;
    const double span = d.u.back();

    ProfileCurve out;
    out.n = curve.n;
    out.topology = curve.topology;
    out.period = curve.period;
    const std::size_t count = closed ? M + 1 : M;
    out.nodes.resize(count);

    std::size_t seg = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const double u = span * static_cast<double>(k) / static_cast<double>(M);
        while (seg + 2 < d.u.size() && u > d.u[seg + 1]) ++seg;
        const double h = d.u[seg + 1] - d.u[seg];
        const double t = std::clamp((u - d.u[seg]) / h, 0.0, 1.0);
        out.nodes[k].z = hermite(d.z[seg], d.z[seg + 1], d.dz[seg], d.dz[seg + 1], h, t);
        out.nodes[k].r = hermite(d.r[seg], d.r[seg + 1], d.dr[seg], d.dr[seg + 1], h, t);
    }
    if (closed) {
        out.nodes.front() = curve.nodes.front();
        out.nodes.back() = curve.nodes.back();
    } else {
        out.nodes.front() = curve.nodes.front();
    }
    return out;
}

ProfileCurve periodicProfileFromGraph(int n, std::span<const double> z, std::span<const double> r,
                                      double period) {
    if (z.size() != r.size()) throw InvalidInputError("graph samples: z and r differ in length");
    ProfileCurve c;
    c.n = n;
    c.topology = Topology::PeriodicNeck;
    c.period = period;
    c.nodes.reserve(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) c.nodes.push_back({z[i], r[i]});
    validateProfile(c);
    return c;
}

FlowState makeProfileState(ProfileCurve curve, double t, long step) {
    FlowState state;
    state.perNode = profileGeometry(curve);
    state.surface = std::move(curve);
    state.t = t;
    state.step = step;
    return state;
}

} // namespace necksim
