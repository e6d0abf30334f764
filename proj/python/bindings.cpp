#include "necksim/curvature.hpp"
#include "necksim/errors.hpp"
#include "necksim/estimates.hpp"
#include "necksim/flow.hpp"
#include "necksim/geometry.hpp"
#include "necksim/inradius.hpp"
#include "necksim/io.hpp"
#include "necksim/mesh.hpp"
#include "necksim/shapes.hpp"
#include "necksim/verify.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace necksim;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array toArray(std::span<const double> values) {
    Array out(static_cast<py::ssize_t>(values.size()));
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}

PrincipalCurvatures toCurvatures(const Array& lambda) {
    if (lambda.ndim() != 1) throw InvalidInputError("curvatures must be a 1-d array");
    return PrincipalCurvatures(std::vector<double>(lambda.data(), lambda.data() + lambda.size()));
}

/// Rows of per-node principal curvatures, shape (nodes, n).
Array curvatureMatrix(const FlowState& state) {
    const auto rows = static_cast<py::ssize_t>(state.perNode.size());
    const auto cols = static_cast<py::ssize_t>(state.dimension());
    Array out({rows, cols});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < rows; ++i)
        for (py::ssize_t j = 0; j < cols; ++j)
            view(i, j) = state.perNode[static_cast<std::size_t>(i)].curvatures[static_cast<std::size_t>(j)];
    return out;
}

Array profileColumn(const FlowState& state, double ProfileNode::*field) {
    if (!state.isProfile()) throw InvalidInputError("z and r are only defined for profile states");
    const ProfileCurve& curve = state.profile();
    Array out(static_cast<py::ssize_t>(curve.size()));
    for (std::size_t i = 0; i < curve.size(); ++i) out.mutable_data()[i] = curve.nodes[i].*field;
    return out;
}

FlowState profileState(const Array& z, const Array& r, int n, std::optional<double> period) {
    if (z.ndim() != 1 || r.ndim() != 1 || z.size() != r.size())
        throw InvalidInputError("z and r must be 1-d arrays of equal length");
    ProfileCurve curve;
    curve.n = n;
    curve.topology = period ? Topology::PeriodicNeck : Topology::Closed;
    curve.period = period.value_or(0.0);
    curve.nodes.resize(static_cast<std::size_t>(z.size()));
    for (std::size_t i = 0; i < curve.nodes.size(); ++i) curve.nodes[i] = {z.data()[i], r.data()[i]};
    FlowState state = makeProfileState(std::move(curve));
    attachMu(state);
    return state;
}

FlowState withMu(FlowState state) {
    attachMu(state);
    return state;
}

py::dict muDict(const MuField& field) {
    py::dict d;
    d["mu"] = toArray(field.mu);
    d["witness"] = field.witness;
    std::vector<std::string> branch;
    branch.reserve(field.branch.size());
    for (MuBranch b : field.branch) branch.emplace_back(b == MuBranch::Local ? "local" : "two-point");
    d["branch"] = branch;
    d["two_point"] = toArray(field.twoPoint);
    return d;
}

/// Columns of a monitor series keyed like the series.csv header.
py::dict seriesDict(std::span<const MonitorSample> series) {
    auto column = [&](double MonitorSample::*field) {
        std::vector<double> v;
        v.reserve(series.size());
        for (const MonitorSample& s : series) v.push_back(s.*field);
        return toArray(v);
    };
    py::dict d;
    d["t"] = column(&MonitorSample::t);
    d["sup_mu_over_g"] = column(&MonitorSample::supMuOverG);
    d["sup_h_over_g"] = column(&MonitorSample::supHOverG);
    d["inf_l1_over_g"] = column(&MonitorSample::infLambda1OverG);
    d["sup_ln_over_g"] = column(&MonitorSample::supLambdaNOverG);
    d["sup_gradh_over_g2"] = column(&MonitorSample::supGradHOverG2);
    d["sup_g"] = column(&MonitorSample::supG);
    d["area"] = column(&MonitorSample::area);
    d["min_pinch_eig"] = column(&MonitorSample::minPinchEig);
    return d;
}

} // namespace

PYBIND11_MODULE(_necksim, m) {
    m.doc() = "Axisymmetric and mesh simulation of the two-convex inverse-harmonic-mean curvature flow.";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidInputError>(m, "InvalidInputError", error);
    py::register_exception<TwoConvexityError>(m, "TwoConvexityError", error);
    py::register_exception<DegenerateGeometryError>(m, "DegenerateGeometryError", error);
    py::register_exception<CurvatureFitError>(m, "CurvatureFitError", error);
    py::register_exception<ExtinctError>(m, "ExtinctError", error);
    py::register_exception<IterationDivergesError>(m, "IterationDivergesError", error);
    py::register_exception<ConfigError>(m, "ConfigError", error);

    // Curvature functions.
    m.def(
        "g_kappa", [](const Array& lambda, double kappa) { return gKappa(toCurvatures(lambda), {kappa}); },
        py::arg("lambda_"), py::arg("kappa") = 0.0, "Speed G_kappa of a sorted or unsorted curvature vector.");
    m.def(
        "grad_g_kappa",
        [](const Array& lambda, double kappa) { return toArray(gradGKappa(toCurvatures(lambda), {kappa})); },
        py::arg("lambda_"), py::arg("kappa") = 0.0, "Gradient of G_kappa, indexed like the sorted curvatures.");
    m.def(
        "two_convexity_margin",
        [](const Array& lambda, double kappa) { return twoConvexityMargin(toCurvatures(lambda), {kappa}); },
        py::arg("lambda_"), py::arg("kappa") = 0.0);

    // Closed-form constants and exact solutions.
    m.def("cylinder_mu_ratio", &cylinderMuRatio, py::arg("n"));
    m.def("cylinder_H_ratio", &cylinderHRatio, py::arg("n"));
    m.def("sphere_mu_ratio", &sphereMuRatio, py::arg("n"));
    m.def("exact_sphere_radius", &exactSphereRadius, py::arg("n"), py::arg("r0"), py::arg("t"));
    m.def("exact_cylinder_radius", &exactCylinderRadius, py::arg("n"), py::arg("r0"), py::arg("t"),
          py::arg("kappa") = 0.0);
    m.def("stampacchia_vanishing_level", &stampacchiaVanishingLevel, py::arg("alpha"), py::arg("gamma"),
          py::arg("C"), py::arg("k0"), py::arg("phi0"));

    // States.
    py::class_<FlowState>(m, "FlowState")
        .def_readonly("t", &FlowState::t)
        .def_readonly("step", &FlowState::step)
        .def_property_readonly("dimension", &FlowState::dimension)
        .def_property_readonly("is_profile", &FlowState::isProfile)
        .def_property_readonly("node_count", [](const FlowState& s) { return s.perNode.size(); })
        .def_property_readonly("z", [](const FlowState& s) { return profileColumn(s, &ProfileNode::z); })
        .def_property_readonly("r", [](const FlowState& s) { return profileColumn(s, &ProfileNode::r); })
        .def_property_readonly("curvatures", &curvatureMatrix)
        .def_property_readonly("area_weights",
                               [](const FlowState& s) {
                                   std::vector<double> w;
                                   for (const NodeGeometry& g : s.perNode) w.push_back(g.areaWeight);
                                   return toArray(w);
                               })
        .def_property_readonly("mu",
                               [](const FlowState& s) -> py::object {
                                   if (!s.mu) return py::none();
                                   return toArray(s.mu->mu);
                               })
        .def("snapshot_csv", [](const FlowState& s) {
            std::ostringstream os;
            writeSnapshot(os, s);
            return os.str();
        });

    m.def(
        "model_state",
        [](const std::string& kind, int n, std::size_t N, double r, double a, double b, double L) {
            ModelShape shape;
            shape.kind = parseShapeKind(kind);
            shape.n = n;
            shape.radius = r;
            shape.meanRadius = a;
            shape.amplitude = b;
            shape.period = L;
            return withMu(modelState(shape, N));
        },
        py::arg("kind"), py::arg("n") = 3, py::arg("N") = 256, py::arg("r") = 1.0, py::arg("a") = 0.5,
        py::arg("b") = 0.3, py::arg("L") = 4.0,
        "Sphere, cylinder or cosine-neck profile sampled with N nodes, with mu attached.");
    m.def("profile_state", &profileState, py::arg("z"), py::arg("r"), py::arg("n"), py::arg("period") = py::none(),
          "Profile state from (z, r) samples; closed unless a period is given.");
    m.def(
        "icosphere_state",
        [](double radius, int subdivisions) { return withMu(makeMeshState(makeIcosphere(radius, subdivisions))); },
        py::arg("radius") = 1.0, py::arg("subdivisions") = 3);
    m.def(
        "mesh_state_from_off", [](const std::string& path) { return withMu(makeMeshState(readOffFile(path))); },
        py::arg("path"));

    m.def("mu", [](const FlowState& s) { return muDict(computeMu(s)); }, py::arg("state"),
          "Inscribed-radius field: mu, witness node, winning branch and two-point supremum per node.");

    // Flow.
    py::class_<FlowConfig>(m, "FlowConfig")
        .def(py::init<>())
        .def_readwrite("kappa", &FlowConfig::kappa)
        .def_readwrite("dt_safety", &FlowConfig::dtSafety)
        .def_readwrite("max_curvature_cap", &FlowConfig::maxCurvatureCap)
        .def_readwrite("min_radius_floor", &FlowConfig::minRadiusFloor)
        .def_readwrite("t_end", &FlowConfig::tEnd)
        .def_readwrite("resample_every", &FlowConfig::resampleEvery)
        .def_readwrite("snapshot_every", &FlowConfig::snapshotEvery)
        .def_readwrite("beta", &FlowConfig::beta)
        .def_readwrite("monitors", &FlowConfig::monitors)
        .def_readwrite("max_steps", &FlowConfig::maxSteps);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("snapshots", &Trajectory::snapshots)
        .def_property_readonly("stop", [](const Trajectory& t) { return std::string(stopReasonName(t.stop)); })
        .def_readonly("steps", &Trajectory::steps)
        .def_property_readonly("series", [](const Trajectory& t) { return seriesDict(t.series); });

    m.def("step", [](const FlowState& s, double dt, double kappa) { return step(s, dt, {kappa}); },
          py::arg("state"), py::arg("dt"), py::arg("kappa") = 0.0, "One Richardson-extrapolated explicit step.");
    m.def("adaptive_dt", &adaptiveDt, py::arg("state"), py::arg("config"));
    m.def("run", &run, py::arg("initial"), py::arg("config"), py::call_guard<py::gil_scoped_release>(),
          "Evolves the state until t_end or a stop condition; returns snapshots and monitor series.");

    // Estimates.
    m.def(
        "monitors",
        [](const FlowState& s, double kappa, double beta) {
            const MonitorSample sample = monitors(s, {kappa}, beta);
            py::dict d = seriesDict(std::span(&sample, 1));
            py::dict scalars;
            for (auto item : d) scalars[item.first] = item.second.cast<Array>().at(0);
            return scalars;
        },
        py::arg("state"), py::arg("kappa") = 0.0, py::arg("beta") = 0.0,
        "Scale-invariant monitors of a state with mu attached; beta <= 0 selects (n-1)(n+2)/4.");
    m.def(
        "level_function",
        [](const FlowState& s, double sigma, double delta, double k, double kappa) {
            return toArray(levelFunction(s, {sigma, delta, k, 10.0}, {kappa}));
        },
        py::arg("state"), py::arg("sigma") = 0.05, py::arg("delta") = 0.5, py::arg("k") = 0.0, py::arg("kappa") = 0.0);

    // Verification.
    m.def(
        "run_acceptance",
        [](std::uint64_t seed, std::size_t neckNodes) {
            std::vector<CriterionResult> results;
            {
                py::gil_scoped_release release;
                results = runAcceptance({seed, neckNodes});
            }
            py::list out;
            for (const CriterionResult& r : results) {
                const Check& h = r.headline();
                py::dict d;
                d["id"] = r.id;
                d["title"] = r.title;
                d["pass"] = r.pass();
                d["check"] = h.name;
                d["expected"] = h.expected;
                d["actual"] = h.actual;
                d["tol"] = h.tol;
                d["seconds"] = r.seconds;
                out.append(d);
            }
            return out;
        },
        py::arg("seed") = AcceptanceOptions{}.seed, py::arg("neck_nodes") = AcceptanceOptions{}.neckNodes,
        "Runs the twelve acceptance criteria; one dict per criterion with its headline check.");
}
