#include "necksim/curvature.hpp"

#include "necksim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace necksim {

PrincipalCurvatures::PrincipalCurvatures(std::vector<double> lambda) : lambda_(std::move(lambda)) {
    std::sort(lambda_.begin(), lambda_.end());
}

PrincipalCurvatures::PrincipalCurvatures(std::initializer_list<double> lambda)
    : PrincipalCurvatures(std::vector<double>(lambda)) {}

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

namespace {

void requireDim(const PrincipalCurvatures& lambda) {
    if (lambda.dim() < 2) throw InvalidInputError("principal curvatures need n >= 2");
}

double requireTwoConvex(const PrincipalCurvatures& lambda, const VelocityParams& params) {
    requireDim(lambda);
    const double margin = twoConvexityMargin(lambda, params);
    if (!(margin > 0.0)) throw TwoConvexityError(margin);
    return margin;
}

double pairSum(const PrincipalCurvatures& lambda, double kappa) {
    CompensatedSum sum;
    const std::size_t n = lambda.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) sum.add(1.0 / (lambda[i] + lambda[j] - 2.0 * kappa));
    return sum.value();
}

} // namespace

double twoConvexityMargin(const PrincipalCurvatures& lambda, const VelocityParams& params) {
    requireDim(lambda);
    return lambda[0] + lambda[1] - 2.0 * params.kappa;
}

double gKappa(const PrincipalCurvatures& lambda, const VelocityParams& params) {
    requireTwoConvex(lambda, params);
    return 1.0 / pairSum(lambda, params.kappa);
}

std::vector<double> gradGKappa(const PrincipalCurvatures& lambda, const VelocityParams& params) {
    const double g = gKappa(lambda, params);
    const std::size_t n = lambda.dim();
    std::vector<double> grad(n);
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum sum;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = lambda[i] + lambda[j] - 2.0 * params.kappa;
            sum.add(1.0 / (d * d));
        }
        grad[i] = g * g * sum.value();
    }
    return grad;
}

CurvatureScalars scalars(const PrincipalCurvatures& lambda, const VelocityParams& params) {
    CurvatureScalars out;
    CompensatedSum h, h2;
    for (double l : lambda.values()) {
        h.add(l);
        h2.add(l * l);
    }
    out.H = h.value();
    out.hNormSq = h2.value();
    out.margin = twoConvexityMargin(lambda, params);
    if (out.margin > 0.0) out.G = 1.0 / pairSum(lambda, params.kappa);
    return out;
}

double concavityProbe(const PrincipalCurvatures& a, const PrincipalCurvatures& b,
                      const VelocityParams& params) {
    if (a.dim() != b.dim()) throw InvalidInputError("concavity probe: dimension mismatch");
    requireTwoConvex(a, params);
    requireTwoConvex(b, params);
    std::vector<double> mid(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) mid[i] = 0.5 * (a[i] + b[i]);
    return gKappa(PrincipalCurvatures(std::move(mid)), params) -
           0.5 * (gKappa(a, params) + gKappa(b, params));
}

} // namespace necksim
