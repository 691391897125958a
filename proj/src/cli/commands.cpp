#include "encharm/cli/commands.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "encharm/approximation.hpp"
#include "encharm/bounds.hpp"
#include "encharm/errors.hpp"
#include "encharm/exact_analysis.hpp"

namespace encharm::cli {

using nlohmann::ordered_json;

namespace {

void raise(AnalysisReport& r, int code, std::string message) {
    if (code > r.exit_code) r.exit_code = code;
    r.diagnostics.push_back(std::move(message));
}

std::string unit_suffix(AngleUnit u) { return u == AngleUnit::Degrees ? "_deg" : "_rad"; }

// Mismatch-only specs (no extra disturbances, cosine channel as phase
// reference) map onto a row of the closed-form table.
std::optional<MismatchCase> mismatch_case_of(const EncoderSpec& raw, double g) {
    const auto& m = raw.main();
    if (!raw.disturbances().empty() || m.psi_p != 0.0 || m.is_ideal()) return std::nullopt;
    MismatchParams params{m.A0 / g, m.B0 / g, m.Ap / g - 1.0, m.Bp / g - 1.0, m.theta_p};
    const bool offset = params.A0 != 0.0 || params.B0 != 0.0;
    const bool amplitude = params.An != 0.0 || params.Bn != 0.0;
    const bool phase = params.delta_p != 0.0;
    if (!(std::abs(params.delta_p) < kPi)) return std::nullopt;

    MismatchVariant v{};
    if (offset && amplitude && phase)
        v = MismatchVariant::OffsetAmplitudePhase;
    else if (offset && amplitude)
        v = MismatchVariant::OffsetAmplitude;
    else if (offset && phase)
        v = MismatchVariant::OffsetPhase;
    else if (amplitude && phase)
        v = MismatchVariant::AmplitudePhase;
    else if (offset)
        v = MismatchVariant::Offset;
    else if (amplitude)
        v = MismatchVariant::Amplitude;
    else
        v = MismatchVariant::Phase;
    return MismatchCase(v, params);
}

ordered_json component_json(const HarmonicComponent& c) {
    return {{"n", c.n}, {"A", c.A}, {"theta", c.theta}, {"B", c.B}, {"psi", c.psi}};
}

std::optional<double> opt_unit(const std::optional<double>& v, AngleUnit u) {
    if (!v) return std::nullopt;
    return in_unit(*v, u);
}

ordered_json nullable(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

AnalysisReport run_analysis(const AnalysisConfig& config) {
    AnalysisReport report;
    const auto units = config.units;
    const auto N = config.samples;
    const std::string config_line = "# config: " + effective_config_json(config) + "\n";

    const auto normalized = normalize(config.spec);
    const auto& spec = normalized.spec;

    std::optional<ErrorTrace> exact;
    try {
        exact = exact_error(config.spec, N);
    } catch (const DomainError& e) {
        raise(report, exit_code::domain, std::string("exact analysis failed: ") + e.what());
    }

    TaylorOptions options{config.term_budget};
    std::optional<HarmonicSpectrum> taylor1, taylorK;
    try {
        taylor1 = collect_spectrum(taylor_terms(spec, 1, options));
        taylorK = config.taylor_order == 1 ? taylor1 : collect_spectrum(taylor_terms(spec, config.taylor_order, options));
    } catch (const ResourceError& e) {
        raise(report, exit_code::resource, std::string("Taylor expansion skipped: ") + e.what());
    }

    if (config.outputs.trace) {
        std::vector<double> t1, tk;
        if (taylor1) t1 = taylor1->sample(N);
        if (taylorK) tk = taylorK->sample(N);
        const auto s = unit_suffix(units);
        std::string out = config_line;
        out += fmt::format("phi{0},exact{0},taylor1{0},taylorK{0},residual1{0},residualK{0}\n", s);
        for (std::size_t k = 0; k < N; ++k) {
            const double phi = grid_angle(k, N);
            auto cell = [&](bool ok, double v) { return ok ? format_number(in_unit(v, units)) : std::string(); };
            const double e = exact ? exact->delta_phi_p[k] : 0.0;
            out += format_number(in_unit(phi, units));
            out += ',' + cell(exact.has_value(), e);
            out += ',' + cell(taylor1.has_value(), taylor1 ? t1[k] : 0.0);
            out += ',' + cell(taylorK.has_value(), taylorK ? tk[k] : 0.0);
            out += ',' + cell(exact && taylor1, exact && taylor1 ? e - t1[k] : 0.0);
            out += ',' + cell(exact && taylorK, exact && taylorK ? e - tk[k] : 0.0);
            out += '\n';
        }
        report.trace_csv = std::move(out);
    }

    if (config.outputs.spectrum) {
        std::optional<HarmonicSpectrum> exact_spec;
        if (exact) exact_spec = dft_spectrum(*exact, config.max_order);
        const auto geometric = geometric_spectrum(spec);
        std::optional<std::map<int, double>> catalog;
        if (auto mc = mismatch_case_of(config.spec, normalized.normalization.g))
            catalog = catalog_spectrum(*mc, config.spec.periodicity());

        auto cell = [&](const std::optional<HarmonicSpectrum>& s, int n) {
            return s ? format_number(in_unit(s->amplitude(n), units)) : std::string();
        };
        std::string out = config_line;
        out += "order,exact_amp,geometric_amp,taylor1_amp,taylorK_amp,catalog_amp\n";
        for (int n = 0; n <= config.max_order; ++n) {
            out += std::to_string(n);
            out += ',' + cell(exact_spec, n);
            out += ',' + format_number(in_unit(geometric.amplitude(n), units));
            out += ',' + cell(taylor1, n);
            out += ',' + cell(taylorK, n);
            out += ',';
            if (catalog) {
                auto it = catalog->find(n);
                if (it != catalog->end()) out += format_number(in_unit(it->second, units));
            }
            out += '\n';
        }
        report.spectrum_csv = std::move(out);
    }

    // bounds are always evaluated so domain violations set the exit code
    const auto bounds = bound_report(spec, config.taylor_order);
    for (const auto& v : bounds.domain_violations) raise(report, exit_code::domain, v);

    if (config.outputs.bounds) {
        ordered_json j;
        j["config"] = ordered_json::parse(effective_config_json(config));
        j["units"] = std::string(to_string(units));
        ordered_json eq = ordered_json::array();
        for (const auto& c : normalized.normalization.equivalents) eq.push_back(component_json(c));
        j["normalization"] = {{"g", normalized.normalization.g}, {"equivalents", eq}};
        j["A_cal"] = bounds.A_cal;
        j["A_tilde"] = bounds.A_tilde;
        j["geometric_bound"] = nullable(opt_unit(bounds.geometric_bound, units));
        j["rule_of_thumb"] = nullable(opt_unit(bounds.rule_of_thumb, units));
        ordered_json residual = ordered_json::object();
        for (const auto& [k, v] : bounds.residual_bounds) residual[std::to_string(k)] = in_unit(v, units);
        j["residual_bounds"] = residual;
        j["divergence"] = {{"diverges", bounds.diverges()}, {"reasons", bounds.domain_violations}};
        if (exact) j["max_abs_exact_error"] = in_unit(exact->max_abs(), units);
        j["diagnostics"] = report.diagnostics;
        j["exit_code"] = report.exit_code;
        report.bounds_json = j.dump(2) + "\n";
    }
    return report;
}

int cmd_analyze(const AnalysisConfig& config, const std::filesystem::path& output_dir, std::ostream& log) {
    const auto report = run_analysis(config);
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    if (ec) {
        log << "error: cannot create output directory " << output_dir << ": " << ec.message() << '\n';
        return exit_code::config;
    }
    auto write = [&](const char* name, const std::string& content) {
        if (content.empty()) return true;
        std::ofstream out(output_dir / name, std::ios::binary);
        out << content;
        if (!out) {
            log << "error: cannot write " << (output_dir / name) << '\n';
            return false;
        }
        return true;
    };
    if (!write("error_trace.csv", report.trace_csv) || !write("spectrum.csv", report.spectrum_csv) ||
        !write("bounds.json", report.bounds_json)) {
        return exit_code::config;
    }
    for (const auto& d : report.diagnostics) log << "warning: " << d << '\n';
    return report.exit_code;
}

std::string lissajous_csv(const AnalysisConfig& config) {
    const auto trace = synthesize(config.spec, config.samples);
    const auto err = exact_error(config.spec, config.samples);
    const auto s = unit_suffix(config.units);
    std::string out = "# config: " + effective_config_json(config) + "\n";
    out += fmt::format("phi{0},b,a,radius,exact{0}\n", s);
    for (std::size_t k = 0; k < trace.size(); ++k) {
        out += format_number(in_unit(trace.phi[k], config.units));
        out += ',' + format_number(trace.b[k]);
        out += ',' + format_number(trace.a[k]);
        out += ',' + format_number(std::hypot(trace.a[k], trace.b[k]));
        out += ',' + format_number(in_unit(err.delta_phi_p[k], config.units));
        out += '\n';
    }
    return out;
}

std::string catalog_json(const CatalogRequest& request) {
    const MismatchCase mc(request.variant, request.params);
    const int p = request.p;
    const auto spectrum = catalog_spectrum(mc, p);
    const auto orders = catalog_orders(request.variant);
    const auto consistency = catalog_consistency(mc, p);
    const auto u = request.units;

    ordered_json j;
    j["variant"] = std::string(to_string(request.variant));
    j["p"] = p;
    j["units"] = std::string(to_string(u));
    const auto& m = request.params;
    j["params"] = {{"A0", m.A0}, {"B0", m.B0}, {"An", m.An}, {"Bn", m.Bn}, {"delta_p", m.delta_p}};
    ordered_json lines = ordered_json::array();
    for (const auto& [order, amp] : spectrum) lines.push_back({{"order", order}, {"amplitude", in_unit(amp, u)}});
    j["spectrum"] = lines;
    auto scaled = [p](const std::vector<int>& multiples) {
        std::vector<int> out;
        for (int m : multiples) out.push_back(m * p);
        return out;
    };
    j["orders"] = {{"T1", scaled(orders.first)}, {"T2", scaled(orders.second)}};
    ordered_json entries = ordered_json::array();
    for (const auto& e : consistency.entries) {
        entries.push_back({{"order", e.order},
                           {"catalog", in_unit(e.catalog, u)},
                           {"engine", in_unit(e.engine, u)},
                           {"deviation", in_unit(e.deviation, u)}});
    }
    j["consistency"] = {{"tolerance", in_unit(consistency.tolerance, u)},
                        {"max_deviation", in_unit(consistency.max_deviation, u)},
                        {"consistent", consistency.consistent()},
                        {"flagged_orders", consistency.flagged_orders()},
                        {"entries", entries}};
    return j.dump(2) + "\n";
}

}  // namespace encharm::cli
