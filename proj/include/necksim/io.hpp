#pragma once

#include "necksim/estimates.hpp"
#include "necksim/geometry.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace necksim {

/// Shortest round-trip decimal form of a double.
std::string formatNumber(double value);

/// Profile snapshot CSV: `s,z,r,nu_z,nu_r,lambda_1,...,lambda_n,areaWeight`,
/// one row per node, followed by `mu,witness,branch` when μ is attached.
void writeProfileSnapshot(std::ostream& out, const FlowState& state);

/// Reads a profile snapshot. Curves whose first and last rows lie on the axis
/// are closed; anything else is a periodic neck and needs `period`.
/// Geometry columns are taken verbatim; the μ columns are ignored.
FlowState readProfileSnapshot(std::istream& in, std::optional<double> period = std::nullopt);

/// Mesh counterpart: `x,y,z,nu_x,nu_y,nu_z,lambda_1,lambda_2,areaWeight[,mu,witness,branch]`.
void writeMeshSnapshot(std::ostream& out, const FlowState& state);

void writeSnapshot(std::ostream& out, const FlowState& state);

inline constexpr const char* kSeriesHeader =
    "t,sup_mu_over_g,sup_h_over_g,inf_l1_over_g,sup_ln_over_g,sup_gradh_over_g2,sup_g,area,min_pinch_eig";

void writeSeries(std::ostream& out, std::span<const MonitorSample> series);

struct LevelRow {
    double k = 0.0;
    double aOfK = 0.0;
    double lpIntegral = 0.0;
};

void writeLevels(std::ostream& out, std::span<const LevelRow> rows);

} // namespace necksim
