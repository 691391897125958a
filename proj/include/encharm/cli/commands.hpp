#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "encharm/cli/config.hpp"
#include "encharm/mismatch_catalog.hpp"

namespace encharm::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int domain = 3;
inline constexpr int resource = 4;
}  // namespace exit_code

/// Rendered analyze reports. Empty strings for reports not selected.
struct AnalysisReport {
    std::string trace_csv;
    std::string spectrum_csv;
    std::string bounds_json;
    int exit_code = exit_code::ok;
    std::vector<std::string> diagnostics;
};

/// Runs exact, first-order, order-k and bound analyses. Failures in one part
/// (divergent bounds, term budget) are recorded and the remaining reports are
/// still produced; exit_code carries the most severe failure.
[[nodiscard]] AnalysisReport run_analysis(const AnalysisConfig& config);

/// Writes error_trace.csv, spectrum.csv and bounds.json into output_dir.
int cmd_analyze(const AnalysisConfig& config, const std::filesystem::path& output_dir, std::ostream& log);

/// One row per sample: phi, b, a, |z| and the exact error.
[[nodiscard]] std::string lissajous_csv(const AnalysisConfig& config);

struct CatalogRequest {
    MismatchVariant variant = MismatchVariant::Offset;
    MismatchParams params;
    int p = 1;
    AngleUnit units = AngleUnit::Radians;
};

/// Closed-form amplitudes, tabulated orders and the engine consistency check as JSON.
[[nodiscard]] std::string catalog_json(const CatalogRequest& request);

/// Fixed float formatting used in every CSV: 17 significant digits.
[[nodiscard]] std::string format_number(double v);

}  // namespace encharm::cli
