#pragma once

#include "necksim/curvature.hpp"
#include "necksim/geometry.hpp"

#include <string>
#include <string_view>

namespace necksim {

enum class ShapeKind { Sphere, Cylinder, CosineNeck };

ShapeKind parseShapeKind(std::string_view name);
std::string_view shapeKindName(ShapeKind kind);

/// Closed-form model surface. The cosine neck is r(z) = a - b cos(2πz/L).
struct ModelShape {
    ShapeKind kind = ShapeKind::Sphere;
    int n = 3;
    double radius = 1.0;      ///< sphere, cylinder
    double meanRadius = 0.5;  ///< cosine-neck a
    double amplitude = 0.3;   ///< cosine-neck b
    double period = 4.0;      ///< cosine-neck L; also the cylinder's period

    static ModelShape sphere(int n, double r);
    static ModelShape cylinder(int n, double r, double period = 4.0);
    static ModelShape cosineNeck(int n, double a, double b, double L);
};

void validateShape(const ModelShape& shape);

/// Sampled model surface with analytic normals and curvatures attached.
/// Spheres are sampled uniformly in arclength (both poles included);
/// cylinders and necks uniformly in z over one period, the neck waist at
/// node N/2.
FlowState modelState(const ModelShape& shape, std::size_t N);

/// Analytic principal curvatures of the cosine neck at axial position z.
PrincipalCurvatures cosineNeckCurvatures(const ModelShape& neck, double z);

/// Sharp constant (n-1)(n+2)/4: μ/G and λ_n/G on a cylinder.
double cylinderMuRatio(int n);
/// (n-1)^2(n+2)/4: H/G on a cylinder.
double cylinderHRatio(int n);
/// n(n-1)/4: μ/G on a sphere.
double sphereMuRatio(int n);

double sphereExtinctionTime(int n, double r0);
/// κ = 0 pinch time (n-1)(n+2) r0^2 / 8.
double cylinderPinchTime(int n, double r0);

/// Radius of the shrinking round sphere, sqrt(r0^2 - 8t/(n(n-1))).
/// Throws ExtinctError for t >= extinction time.
double exactSphereRadius(int n, double r0, double t);

/// Radius of the shrinking round cylinder. Closed form for κ = 0; for κ > 0
/// the ODE dr/dt = -G_κ(0, 1/r, ..., 1/r) is integrated adaptively (in r^2,
/// which stays smooth up to the pinch) at relative tolerance 1e-10.
/// Throws ExtinctError once the cylinder has pinched before t.
double exactCylinderRadius(int n, double r0, double t, double kappa = 0.0);

enum class RigidityClass { Cylindrical, Umbilic, Neither };

std::string_view rigidityClassName(RigidityClass c);

struct RigidityReport {
    RigidityClass cls = RigidityClass::Neither;
    /// (n-1)(n+2)/4 or n(n-1)/4 for the two model rays; for `Neither`, the
    /// observed λ_n/G (NaN outside the two-convex cone).
    double beta = 0.0;
    /// Max-norm deviation of λ/λ_n from the nearer model ray.
    double distance = 0.0;
};

inline constexpr double kDefaultRigidityTolerance = 0.05;

/// Classifies λ against the cylinder ray (0,1,...,1) and the umbilic ray
/// (1,...,1). Ties go to the cylinder. Throws when λ_n <= 0.
RigidityReport rigidityClassify(const PrincipalCurvatures& lambda, double tol = kDefaultRigidityTolerance);

} // namespace necksim
