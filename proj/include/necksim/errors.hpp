#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace necksim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, bad shape parameters, etc.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// Principal curvatures left the two-convex cone (λ_1 + λ_2 - 2κ <= 0).
class TwoConvexityError : public Error {
public:
    TwoConvexityError(double margin, std::ptrdiff_t node = -1);

    double margin() const noexcept { return margin_; }
    /// Offending node, or -1 when raised outside a surface context.
    std::ptrdiff_t node() const noexcept { return node_; }

private:
    double margin_;
    std::ptrdiff_t node_;
};

class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

/// Node spacing drifted outside the admissible ratio; resample first.
class ResampleRequiredError : public Error {
public:
    using Error::Error;
};

class CurvatureFitError : public Error {
public:
    CurvatureFitError(std::size_t vertex, const std::string& what);
    std::size_t vertex() const noexcept { return vertex_; }

private:
    std::size_t vertex_;
};

/// Exact solution queried at or past its extinction / pinch time.
class ExtinctError : public Error {
public:
    using Error::Error;
};

class InsufficientResolutionError : public Error {
public:
    using Error::Error;
};

class IterationDivergesError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace necksim
