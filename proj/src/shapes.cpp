#include "necksim/shapes.hpp"

#include "necksim/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace necksim {

ShapeKind parseShapeKind(std::string_view name) {
    if (name == "sphere") return ShapeKind::Sphere;
    if (name == "cylinder") return ShapeKind::Cylinder;
    if (name == "cosine-neck") return ShapeKind::CosineNeck;
    throw InvalidInputError("unknown shape '" + std::string(name) + "'");
}

std::string_view shapeKindName(ShapeKind kind) {
    switch (kind) {
    case ShapeKind::Sphere: return "sphere";
    case ShapeKind::Cylinder: return "cylinder";
    case ShapeKind::CosineNeck: return "cosine-neck";
    }
    return "?";
}

ModelShape ModelShape::sphere(int n, double r) {
    ModelShape s;
    s.kind = ShapeKind::Sphere;
    s.n = n;
    s.radius = r;
    return s;
}

ModelShape ModelShape::cylinder(int n, double r, double period) {
    ModelShape s;
    s.kind = ShapeKind::Cylinder;
    s.n = n;
    s.radius = r;
    s.period = period;
    return s;
}

ModelShape ModelShape::cosineNeck(int n, double a, double b, double L) {
    ModelShape s;
    s.kind = ShapeKind::CosineNeck;
    s.n = n;
    s.meanRadius = a;
    s.amplitude = b;
    s.period = L;
    return s;
}

void validateShape(const ModelShape& shape) {
    if (shape.n < 2) throw InvalidInputError("shape dimension n must be >= 2");
    switch (shape.kind) {
    case ShapeKind::Sphere:
        if (!(shape.radius > 0.0)) throw InvalidInputError("sphere radius must be positive");
        break;
    case ShapeKind::Cylinder:
        if (!(shape.radius > 0.0) || !(shape.period > 0.0))
            throw InvalidInputError("cylinder radius and period must be positive");
        break;
    case ShapeKind::CosineNeck:
        if (!(shape.meanRadius > shape.amplitude) || !(shape.amplitude > 0.0) || !(shape.period > 0.0))
            throw InvalidInputError("cosine neck needs a > b > 0 and L > 0");
        break;
    }
}

PrincipalCurvatures cosineNeckCurvatures(const ModelShape& neck, double z) {
    const double k = 2.0 * std::numbers::pi / neck.period;
    const double r = neck.meanRadius - neck.amplitude * std::cos(k * z);
    const double r1 = neck.amplitude * k * std::sin(k * z);
    const double r2 = neck.amplitude * k * k * std::cos(k * z);
    const double q = std::sqrt(1.0 + r1 * r1);
    std::vector<double> lambda(static_cast<std::size_t>(neck.n), 1.0 / (r * q));
    lambda[0] = -r2 / (q * q * q);
    return PrincipalCurvatures(std::move(lambda));
}

FlowState modelState(const ModelShape& shape, std::size_t N) {
    validateShape(shape);
    if (N < 32) throw InvalidInputError("model state needs at least 32 nodes");
    const auto n = static_cast<std::size_t>(shape.n);

    ProfileCurve curve;
    curve.n = shape.n;
    std::vector<double> meridian(N), rotational(N);
    std::vector<Eigen::Vector3d> normals(N);

    switch (shape.kind) {
    case ShapeKind::Sphere: {
        curve.topology = Topology::Closed;
        const double r = shape.radius;
        for (std::size_t i = 0; i < N; ++i) {
            const double theta = std::numbers::pi * static_cast<double>(i) / static_cast<double>(N - 1);
            ProfileNode node{-r * std::cos(theta), r * std::sin(theta)};
            if (i == 0 || i == N - 1) node.r = 0.0;
            curve.nodes.push_back(node);
            normals[i] = {-std::cos(theta), node.r == 0.0 ? 0.0 : std::sin(theta), 0.0};
            meridian[i] = rotational[i] = 1.0 / r;
        }
        break;
    }
    case ShapeKind::Cylinder: {
        curve.topology = Topology::PeriodicNeck;
        curve.period = shape.period;
        for (std::size_t i = 0; i < N; ++i) {
            const double z = -0.5 * shape.period + shape.period * static_cast<double>(i) / static_cast<double>(N);
            curve.nodes.push_back({z, shape.radius});
            normals[i] = {0.0, 1.0, 0.0};
            meridian[i] = 0.0;
            rotational[i] = 1.0 / shape.radius;
        }
        break;
    }
    case ShapeKind::CosineNeck: {
        curve.topology = Topology::PeriodicNeck;
        curve.period = shape.period;
        const double k = 2.0 * std::numbers::pi / shape.period;
        for (std::size_t i = 0; i < N; ++i) {
            const double z = -0.5 * shape.period + shape.period * static_cast<double>(i) / static_cast<double>(N);
            const double r = shape.meanRadius - shape.amplitude * std::cos(k * z);
            const double r1 = shape.amplitude * k * std::sin(k * z);
            const double r2 = shape.amplitude * k * k * std::cos(k * z);
            curve.nodes.push_back({z, r});
            const double q = std::sqrt(1.0 + r1 * r1);
            normals[i] = {-r1 / q, 1.0 / q, 0.0};
            meridian[i] = -r2 / (q * q * q);
            rotational[i] = 1.0 / (r * q);
        }
        break;
    }
    }

    FlowState state = makeProfileState(std::move(curve));
    for (std::size_t i = 0; i < N; ++i) {
        NodeGeometry& g = state.perNode[i];
        g.normal = normals[i];
        g.lambdaMeridian = meridian[i];
        g.lambdaRotational = rotational[i];
        std::vector<double> lambda(n, rotational[i]);
        lambda[0] = meridian[i];
        g.curvatures = PrincipalCurvatures(std::move(lambda));
    }
    return state;
}

double cylinderMuRatio(int n) { return (n - 1.0) * (n + 2.0) / 4.0; }
double cylinderHRatio(int n) { return (n - 1.0) * (n - 1.0) * (n + 2.0) / 4.0; }
double sphereMuRatio(int n) { return n * (n - 1.0) / 4.0; }

double sphereExtinctionTime(int n, double r0) { return n * (n - 1.0) * r0 * r0 / 8.0; }
double cylinderPinchTime(int n, double r0) { return (n - 1.0) * (n + 2.0) * r0 * r0 / 8.0; }

double exactSphereRadius(int n, double r0, double t) {
    if (n < 2 || !(r0 > 0.0) || t < 0.0) throw InvalidInputError("exact sphere radius: invalid arguments");
    if (t >= sphereExtinctionTime(n, r0)) throw ExtinctError("sphere has become extinct");
    return std::sqrt(r0 * r0 - 8.0 * t / (n * (n - 1.0)));
}

double exactCylinderRadius(int n, double r0, double t, double kappa) {
    if (n < 2 || !(r0 > 0.0) || t < 0.0 || kappa < 0.0)
        throw InvalidInputError("exact cylinder radius: invalid arguments");
    if (kappa == 0.0) {
        const double T = cylinderPinchTime(n, r0);
        if (t > T) throw ExtinctError("cylinder has pinched");
        return std::sqrt(std::max(0.0, r0 * r0 - 8.0 * t / ((n - 1.0) * (n + 2.0))));
    }
    if (!(1.0 / r0 > 2.0 * kappa)) throw TwoConvexityError(1.0 / r0 - 2.0 * kappa);
    if (t == 0.0) return r0;

    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 1>;
    const auto speed = [n, kappa](double r) {
        std::vector<double> lambda(static_cast<std::size_t>(n), 1.0 / r);
        lambda[0] = 0.0;
        return gKappa(PrincipalCurvatures(std::move(lambda)), {kappa});
    };
    // w = r^2, dw/dt = -2 r G_κ(r); r G_κ stays bounded as r -> 0.
    bool pinched = false;
    const auto rhs = [&](const State& w, State& dw, double) {
        if (!(w[0] > 0.0)) {
            pinched = true;
            dw[0] = 0.0;
            return;
        }
        const double r = std::sqrt(w[0]);
        dw[0] = -2.0 * r * speed(r);
    };
    State w{r0 * r0};
    auto stepper = ode::make_controlled(1e-14, 1e-10, ode::runge_kutta_dopri5<State>());
    ode::integrate_adaptive(stepper, rhs, w, 0.0, t, t * 1e-3);
    if (pinched || !(w[0] > 0.0)) throw ExtinctError("cylinder has pinched");
    return std::sqrt(w[0]);
}

std::string_view rigidityClassName(RigidityClass c) {
    switch (c) {
    case RigidityClass::Cylindrical: return "cylindrical";
    case RigidityClass::Umbilic: return "umbilic";
    case RigidityClass::Neither: return "neither";
    }
    return "?";
}

RigidityReport rigidityClassify(const PrincipalCurvatures& lambda, double tol) {
    const std::size_t n = lambda.dim();
    if (n < 2) throw InvalidInputError("rigidity classifier needs n >= 2");
    const double top = lambda.largest();
    if (!(top > 0.0)) throw InvalidInputError("rigidity classifier needs lambda_n > 0");

    double dCyl = 0.0, dUmb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = lambda[i] / top;
        dCyl = std::max(dCyl, std::abs(v - (i == 0 ? 0.0 : 1.0)));
        dUmb = std::max(dUmb, std::abs(v - 1.0));
    }
    const int dim = static_cast<int>(n);
    RigidityReport rep;
    rep.distance = std::min(dCyl, dUmb);
    if (dCyl <= tol && dCyl <= dUmb) {
        rep.cls = RigidityClass::Cylindrical;
        rep.beta = cylinderMuRatio(dim);
    } else if (dUmb <= tol) {
        rep.cls = RigidityClass::Umbilic;
        rep.beta = sphereMuRatio(dim);
    } else {
        rep.cls = RigidityClass::Neither;
        const CurvatureScalars sc = scalars(lambda, {});
        rep.beta = sc.G ? top / *sc.G : std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

} // namespace necksim
