#include "necksim/errors.hpp"
#include "necksim/geometry.hpp"
#include "necksim/mesh.hpp"
#include "necksim/shapes.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace necksim;

namespace {

ProfileCurve sphereCurve(int n, double r, std::size_t N) {
    return modelState(ModelShape::sphere(n, r), N).profile();
}

double sphereCurvatureError(std::size_t N) {
    const auto geom = profileGeometry(sphereCurve(3, 1.0, N));
    double err = 0.0;
    for (const auto& g : geom)
        for (double l : g.curvatures.values()) err = std::max(err, std::abs(l - 1.0));
    return err;
}

} // namespace

TEST(ProfileGeometry, UnitSphere) {
    const auto curve = sphereCurve(3, 1.0, 257);
    const auto geom = profileGeometry(curve);
    ASSERT_EQ(geom.size(), curve.size());
    for (std::size_t i = 0; i < geom.size(); ++i) {
        for (double l : geom[i].curvatures.values()) EXPECT_NEAR(l, 1.0, 1e-4);
        // radially outward
        const Eigen::Vector3d radial = geom[i].position.normalized();
        EXPECT_NEAR(geom[i].normal.dot(radial), 1.0, 1e-8);
        EXPECT_NEAR(geom[i].normal.norm(), 1.0, 1e-12);
        EXPECT_GE(geom[i].areaWeight, 0.0);
    }
}

TEST(ProfileGeometry, SphereConvergesAtSecondOrder) {
    const double e1 = sphereCurvatureError(65);
    const double e2 = sphereCurvatureError(129);
    const double e3 = sphereCurvatureError(257);
    EXPECT_GE(std::log2(e1 / e2), 1.9);
    EXPECT_GE(std::log2(e2 / e3), 1.9);
}

TEST(ProfileGeometry, Cylinder) {
    const auto curve = modelState(ModelShape::cylinder(3, 1.0), 64).profile();
    for (const auto& g : profileGeometry(curve)) {
        EXPECT_NEAR(g.curvatures[0], 0.0, 1e-12);
        EXPECT_NEAR(g.curvatures[1], 1.0, 1e-12);
        EXPECT_NEAR(g.curvatures[2], 1.0, 1e-12);
        EXPECT_NEAR(g.normal[1], 1.0, 1e-12);
    }
}

TEST(ProfileGeometry, CosineNeckWaist) {
    const auto shape = ModelShape::cosineNeck(3, 0.5, 0.3, 4.0);
    const std::size_t N = 1024;
    const auto curve = modelState(shape, N).profile();
    const auto geom = profileGeometry(curve);
    const auto& waist = geom[N / 2];
    EXPECT_NEAR(curve.nodes[N / 2].z, 0.0, 1e-15);
    const double rpp = 0.3 * std::pow(2 * std::numbers::pi / 4, 2);
    EXPECT_NEAR(rpp, 0.74022, 1e-5);
    EXPECT_NEAR(waist.curvatures[0], -rpp, 1e-4);
    EXPECT_NEAR(waist.curvatures[1], 5.0, 1e-4);
    EXPECT_NEAR(waist.curvatures[2], 5.0, 1e-4);
    // Graph formulas away from the waist.
    const double k = 2 * std::numbers::pi / 4.0;
    for (std::size_t i = 0; i < N; i += 37) {
        const double z = curve.nodes[i].z;
        const double r = 0.5 - 0.3 * std::cos(k * z);
        const double r1 = 0.3 * k * std::sin(k * z), r2 = 0.3 * k * k * std::cos(k * z);
        const double q = std::sqrt(1 + r1 * r1);
        EXPECT_NEAR(geom[i].lambdaMeridian, -r2 / (q * q * q), 1e-4);
        EXPECT_NEAR(geom[i].lambdaRotational, 1 / (r * q), 1e-4);
    }
}

TEST(ProfileGeometry, SphereAreaMatchesUnitSphere) {
    const auto geom = profileGeometry(sphereCurve(3, 1.0, 256));
    double area = 0.0;
    for (const auto& g : geom) area += g.areaWeight;
    EXPECT_NEAR(area / (2 * std::numbers::pi * std::numbers::pi), 1.0, 1e-3);
    EXPECT_NEAR(unitSphereArea(3), 2 * std::numbers::pi * std::numbers::pi, 1e-13);
    EXPECT_NEAR(unitSphereArea(2), 4 * std::numbers::pi, 1e-13);
    EXPECT_NEAR(unitSphereArea(1), 2 * std::numbers::pi, 1e-13);
}

TEST(ProfileGeometry, PoleIsRegular) {
    for (std::size_t N : {65u, 129u, 257u}) {
        const auto geom = profileGeometry(sphereCurve(4, 2.0, N));
        const double h = std::numbers::pi * 2.0 / static_cast<double>(N - 1);
        for (std::size_t pole : {std::size_t{0}, N - 1}) {
            const std::size_t adj = pole == 0 ? 1 : N - 2;
            for (std::size_t k = 0; k < 4; ++k)
                EXPECT_LE(std::abs(geom[pole].curvatures[k] - geom[adj].curvatures[k]), h);
            EXPECT_EQ(geom[pole].normal[1], 0.0);
            EXPECT_EQ(geom[pole].areaWeight, 0.0);
        }
    }
}

TEST(ProfileGeometry, ConvexShapesPointOutward) {
    for (const auto& shape : {ModelShape::sphere(3, 1.5), ModelShape::sphere(2, 0.3), ModelShape::cylinder(5, 2.0)}) {
        const auto state = makeProfileState(modelState(shape, 200).profile());
        for (const auto& g : state.perNode) {
            Eigen::Vector3d rel = g.position;
            if (shape.kind == ShapeKind::Cylinder) rel[0] = 0.0; // centroid axis
            EXPECT_GT(g.normal.dot(rel), 0.0);
        }
    }
}

TEST(ProfileGeometry, Errors) {
    auto curve = sphereCurve(3, 1.0, 64);
    auto bad = curve;
    bad.nodes[10].r = 0.0;
    EXPECT_THROW(profileGeometry(bad), DegenerateGeometryError);

    auto squeezed = curve;
    // Shift one node along the curve so its two segments differ by more than 4x.
    const auto& a = curve.nodes[20];
    const auto& b = curve.nodes[21];
    squeezed.nodes[21] = {a.z + 0.1 * (b.z - a.z), a.r + 0.1 * (b.r - a.r)};
    EXPECT_THROW(profileGeometry(squeezed), ResampleRequiredError);
}

TEST(Resample, UniformGridIsAFixedPoint) {
    const auto curve = sphereCurve(3, 1.0, 65);
    const double h = curve.segmentLength(0);
    const auto out = resample(curve, h);
    ASSERT_EQ(out.size(), curve.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        EXPECT_NEAR(out.nodes[i].z, curve.nodes[i].z, 1e-10);
        EXPECT_NEAR(out.nodes[i].r, curve.nodes[i].r, 1e-10);
    }
}

TEST(Resample, SphereRefinementStaysOnSphere) {
    const auto curve = sphereCurve(3, 1.0, 65); // 64 segments
    const auto out = resample(curve, curve.totalLength() / 128.0);
    ASSERT_EQ(out.segmentCount(), 128u);
    for (const auto& p : out.nodes) EXPECT_NEAR(p.z * p.z + p.r * p.r, 1.0, 1e-4);
    EXPECT_EQ(out.nodes.front().r, 0.0);
    EXPECT_EQ(out.nodes.back().r, 0.0);
    const double target = curve.totalLength() / 128.0;
    for (std::size_t i = 0; i < out.segmentCount(); ++i)
        EXPECT_NEAR(out.segmentLength(i) / target, 1.0, 0.1);
}

TEST(Resample, PeriodicNeckKeepsPeriod) {
    const auto curve = modelState(ModelShape::cosineNeck(3, 0.5, 0.3, 4.0), 200).profile();
    const auto out = resample(curve, curve.totalLength() / 333.0);
    EXPECT_EQ(out.period, curve.period);
    EXPECT_EQ(out.topology, Topology::PeriodicNeck);
    EXPECT_EQ(out.nodes.front().z, curve.nodes.front().z);
    EXPECT_NO_THROW(validateProfile(out));
    // Geometric deviation stays small against the analytic graph.
    for (const auto& p : out.nodes) {
        const double exact = 0.5 - 0.3 * std::cos(2 * std::numbers::pi * p.z / 4.0);
        EXPECT_NEAR(p.r, exact, 1e-5);
    }
}

TEST(Resample, RejectsOversizedSpacing) {
    const auto curve = sphereCurve(3, 1.0, 65);
    EXPECT_THROW(resample(curve, 0.51 * curve.totalLength()), InvalidInputError);
    EXPECT_THROW(resample(curve, 0.0), InvalidInputError);
}

TEST(MeshGeometry, IcosphereCurvatures) {
    const double r = 2.0;
    const auto mesh = makeIcosphere(r, 4);
    ASSERT_EQ(mesh.vertices.size(), 2562u);
    const auto geom = meshGeometry(mesh);
    double area = 0.0;
    for (std::size_t i = 0; i < geom.size(); ++i) {
        EXPECT_NEAR(geom[i].curvatures[0] * r, 1.0, 0.05);
        EXPECT_NEAR(geom[i].curvatures[1] * r, 1.0, 0.05);
        EXPECT_GT(geom[i].normal.dot(mesh.vertices[i]), 0.0);
        area += geom[i].areaWeight;
    }
    EXPECT_NEAR(area, meshArea(mesh), 1e-12 * area);
}

TEST(MeshGeometry, CylinderLikeTorusPatch) {
    // Tube radius 1 around a large circle: locally a cylinder of radius 1.
    const auto mesh = makeTorus(200.0, 1.0, 1600, 48);
    const auto geom = meshGeometry(mesh);
    for (std::size_t i = 0; i < mesh.vertices.size(); i += 97) {
        EXPECT_NEAR(geom[i].curvatures[1], 1.0, 0.05);
        EXPECT_NEAR(geom[i].curvatures[0], 0.0, 0.05);
    }
}

TEST(MeshGeometry, RejectsOpenMesh) {
    auto mesh = makeIcosphere(1.0, 1);
    mesh.faces.pop_back();
    EXPECT_THROW(meshGeometry(mesh), InvalidInputError);
    auto flipped = makeIcosphere(1.0, 1);
    for (auto& f : flipped.faces) std::swap(f[1], f[2]);
    EXPECT_THROW(meshGeometry(flipped), InvalidInputError);
}

TEST(MeshGeometry, OffRoundTrip) {
    const auto mesh = makeIcosphere(1.3, 2);
    std::stringstream ss;
    writeOff(ss, mesh);
    const auto back = readOff(ss);
    ASSERT_EQ(back.vertices.size(), mesh.vertices.size());
    ASSERT_EQ(back.faces, mesh.faces);
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) EXPECT_EQ(back.vertices[i], mesh.vertices[i]);
}
