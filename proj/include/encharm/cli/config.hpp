#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "encharm/signal_model.hpp"

namespace encharm::cli {

enum class AngleUnit { Radians, Degrees };

[[nodiscard]] std::string_view to_string(AngleUnit u);

/// Converts a value in radians to the output unit.
[[nodiscard]] double in_unit(double rad, AngleUnit u);

struct OutputSelection {
    bool trace = true;
    bool spectrum = true;
    bool bounds = true;

    friend bool operator==(const OutputSelection&, const OutputSelection&) = default;
};

/// Effective analysis settings. Every default is resolved at parse time, so a
/// config echoed back from a report carries the values that were actually used.
struct AnalysisConfig {
    EncoderSpec spec{MainHarmonicParams{}, {}};
    std::size_t samples = kDefaultSamples;
    int taylor_order = 2;
    int max_order = 0;
    AngleUnit units = AngleUnit::Radians;
    std::size_t term_budget = 1'000'000;
    OutputSelection outputs;
};

/// Parses the JSON config document:
///
///   {"periodicity": 2,
///    "main": {"Ap", "Bp", "theta_p", "psi_p", "A0", "B0"},
///    "harmonics": [{"n", "A", "theta", "B", "psi"}, ...],
///    "samples", "taylor_order", "max_order", "units": "rad" | "deg",
///    "term_budget", "outputs": ["trace", "spectrum", "bounds"]}
///
/// Only "periodicity" is required. max_order defaults to 4 (max n + p).
/// Throws ConfigError with a line/column or field path on failure.
[[nodiscard]] AnalysisConfig parse_config(std::string_view text);

[[nodiscard]] AnalysisConfig load_config(const std::filesystem::path& path);

/// Effective config as a compact JSON document accepted by parse_config().
[[nodiscard]] std::string effective_config_json(const AnalysisConfig& config);

}  // namespace encharm::cli
