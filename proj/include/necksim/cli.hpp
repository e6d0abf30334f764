#pragma once

#include "necksim/estimates.hpp"
#include "necksim/flow.hpp"
#include "necksim/shapes.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace necksim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerification = 4;

inline constexpr int kReportSchemaVersion = 1;

enum class Command { Simulate, Verify, Mu, Oracle, Stampacchia };

std::string_view commandName(Command command);

/// Flat run configuration. Every key of the config file maps to one field;
/// absent keys keep these defaults.
struct RunConfig {
    Command command = Command::Oracle;

    // Initial shape.
    ShapeKind shape = ShapeKind::Cylinder;
    int n = 3;
    double r = 1.0;     ///< sphere / cylinder radius
    double a = 0.5;     ///< cosine-neck mean radius
    double b = 0.3;     ///< cosine-neck amplitude
    double L = 4.0;     ///< period of periodic profiles
    std::size_t N = 256;
    std::string input;  ///< optional snapshot CSV or OFF mesh replacing the model shape

    FlowConfig flow;
    LevelFunctionParams level;

    // levels.csv sweep: kCount values evenly spaced in [kMin, kMax].
    double kMin = 0.0;
    double kMax = 1.0;
    std::size_t kCount = 11;

    std::string output = "necksim-out";
    std::optional<std::uint64_t> seed;
    double perturb = 0.0; ///< relative amplitude of the seeded smooth radial perturbation, [0, 0.5)

    // Stampacchia level.
    double alpha = 0.0;
    double gamma = 0.0;
    double C = 0.0;
    double k0 = 0.0;
    double phi0 = 0.0;

    /// The model shape described by the shape keys.
    ModelShape modelShape() const;
};

/// Parses `key = value` lines (`#` starts a comment), then applies each
/// `key=value` override in order. `command` is always required. Unknown keys,
/// malformed values, duplicate keys within the text and keys the command
/// requires but lacks all throw ConfigError.
RunConfig parseConfig(std::string_view text, std::span<const std::string> overrides = {});

/// Runs the configured command, writing artifacts under config.output and a
/// human-readable summary to out. Returns the process exit code; library
/// errors propagate as exceptions.
int dispatch(const RunConfig& config, std::ostream& out);

/// Reads the config file, parses, dispatches, and maps errors to exit codes
/// (2 config, 3 numerical, 4 verification failure), reporting them on err.
int run(const std::string& configPath, std::span<const std::string> overrides, std::ostream& out, std::ostream& err);

} // namespace necksim::cli
