#pragma once

#include "necksim/curvature.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace necksim {

enum class Topology { PeriodicNeck, Closed };

struct ProfileNode {
    double z = 0.0; ///< axial coordinate
    double r = 0.0; ///< distance from the axis
};

/// Generating curve of a hypersurface of revolution in R^{n+1}.
///
/// Closed curves run from the lower pole (smallest z) to the upper pole; both
/// endpoints lie on the axis. Periodic necks store one period: node N is the
/// implicit copy of node 0 shifted by `period` in z.
struct ProfileCurve {
    int n = 2;
    Topology topology = Topology::Closed;
    std::vector<ProfileNode> nodes;
    double period = 0.0; ///< periodic-neck only

    std::size_t size() const noexcept { return nodes.size(); }
    /// Number of segments: N-1 for closed curves, N for periodic ones.
    std::size_t segmentCount() const noexcept;
    /// Chord length between node i and its successor (wrapping for periodic).
    double segmentLength(std::size_t i) const;
    double totalLength() const;
};

struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces; ///< counter-clockwise seen from outside
};

/// Per-node geometry. For profiles, `position` and `normal` live in the
/// meridian half-plane, stored as (z, r, 0).
struct NodeGeometry {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Vector3d normal = Eigen::Vector3d::Zero();
    PrincipalCurvatures curvatures;
    double areaWeight = 0.0;

    // Profile extras; zero for meshes.
    double s = 0.0; ///< cumulative arclength from node 0
    double lambdaMeridian = 0.0;
    double lambdaRotational = 0.0;
};

enum class MuBranch { TwoPoint, Local };

/// Reciprocal inscribed radius per node.
struct MuField {
    std::vector<double> mu;
    /// Maximizing opposite node, or -1 when the local λ_n branch wins.
    std::vector<std::ptrdiff_t> witness;
    std::vector<MuBranch> branch;
    /// Supremum of the two-point quotient alone (before combining with λ_n);
    /// -inf when no admissible opposite point exists.
    std::vector<double> twoPoint;
};

using Surface = std::variant<ProfileCurve, TriangleMesh>;

struct FlowState {
    Surface surface;
    double t = 0.0;
    long step = 0;
    std::vector<NodeGeometry> perNode;
    std::optional<MuField> mu;

    int dimension() const;
    bool isProfile() const noexcept { return std::holds_alternative<ProfileCurve>(surface); }
    const ProfileCurve& profile() const { return std::get<ProfileCurve>(surface); }
    const TriangleMesh& mesh() const { return std::get<TriangleMesh>(surface); }
};

/// Area of the unit k-sphere in R^{k+1}.
double unitSphereArea(int k);

/// Largest admissible ratio between the longest and shortest segment.
inline constexpr double kMaxSpacingRatio = 4.0;

/// Validates the invariants of a profile curve; throws on violation.
void validateProfile(const ProfileCurve& curve);

/// Discrete second fundamental form of a profile curve: outward normal,
/// meridian and rotational curvatures, area weights. Second-order
/// non-uniform central differences; poles use the mirror image across the
/// axis and take λ_rot equal to λ_meridian.
std::vector<NodeGeometry> profileGeometry(const ProfileCurve& curve);

/// Uniform-arclength resampling by piecewise cubic Hermite interpolation.
/// Closed curves keep their poles on the axis; periodic curves keep node 0
/// and the period.
ProfileCurve resample(const ProfileCurve& curve, double targetSpacing);

/// Converts a graph r(z) sampled on one period [z0, z0+L) into a periodic
/// profile; nodes are taken verbatim (arclength form needs no conversion of
/// the samples themselves).
ProfileCurve periodicProfileFromGraph(int n, std::span<const double> z, std::span<const double> r,
                                      double period);

FlowState makeProfileState(ProfileCurve curve, double t = 0.0, long step = 0);

} // namespace necksim
