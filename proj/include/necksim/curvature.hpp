#pragma once

#include <optional>
#include <span>
#include <vector>

namespace necksim {

/// Principal curvatures λ_1 <= ... <= λ_n at a point. Always stored sorted.
class PrincipalCurvatures {
public:
    PrincipalCurvatures() = default;
    /// Sorts its input; any order is accepted.
    explicit PrincipalCurvatures(std::vector<double> lambda);
    PrincipalCurvatures(std::initializer_list<double> lambda);

    std::size_t dim() const noexcept { return lambda_.size(); }
    std::span<const double> values() const noexcept { return lambda_; }
    double operator[](std::size_t i) const { return lambda_[i]; }
    double smallest() const { return lambda_.front(); }
    double largest() const { return lambda_.back(); }

    bool operator==(const PrincipalCurvatures&) const = default;

private:
    std::vector<double> lambda_;
};

struct VelocityParams {
    double kappa = 0.0;
};

struct CurvatureScalars {
    std::optional<double> G; ///< absent when margin <= 0
    double H = 0.0;
    double hNormSq = 0.0;
    double margin = 0.0;
};

/// λ_1 + λ_2 - 2κ.
double twoConvexityMargin(const PrincipalCurvatures& lambda, const VelocityParams& params);

/// The speed G_κ = (Σ_{i<j} 1/(λ_i+λ_j-2κ))^{-1}.
/// Throws TwoConvexityError when λ_1 + λ_2 - 2κ <= 0.
double gKappa(const PrincipalCurvatures& lambda, const VelocityParams& params);

/// ∂G_κ/∂λ_i = G_κ² Σ_{j≠i} (λ_i+λ_j-2κ)^{-2}, indexed like lambda.values().
std::vector<double> gradGKappa(const PrincipalCurvatures& lambda, const VelocityParams& params);

CurvatureScalars scalars(const PrincipalCurvatures& lambda, const VelocityParams& params);

/// G((a+b)/2) - (G(a)+G(b))/2. Nonnegative up to rounding since G is concave
/// on the two-convex cone.
double concavityProbe(const PrincipalCurvatures& a, const PrincipalCurvatures& b,
                      const VelocityParams& params);

/// Neumaier-compensated sum in index order.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace necksim
