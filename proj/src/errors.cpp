#include "necksim/errors.hpp"

#include <sstream>

namespace necksim {

namespace {
std::string twoConvexityMessage(double margin, std::ptrdiff_t node) {
    std::ostringstream os;
    os.precision(17);
    os << "two-convexity violated: margin lambda_1 + lambda_2 - 2 kappa = " << margin;
    if (node >= 0) os << " at node " << node;
    return os.str();
}
} // namespace

TwoConvexityError::TwoConvexityError(double margin, std::ptrdiff_t node)
    : Error(twoConvexityMessage(margin, node)), margin_(margin), node_(node) {}

CurvatureFitError::CurvatureFitError(std::size_t vertex, const std::string& what)
    : Error("curvature fit failed at vertex " + std::to_string(vertex) + ": " + what),
      vertex_(vertex) {}

} // namespace necksim
