#include "encharm/cli/config.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "encharm/angles.hpp"
#include "encharm/errors.hpp"

namespace encharm::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string location_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
    throw ConfigError("config field '" + path + "': " + what);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> known) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || key == k;
        if (!ok) field_error(path.empty() ? key : path + "." + key, "unknown field");
    }
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) field_error(path.empty() ? "<root>" : path, "expected an object");
    return j;
}

double number_or(const json& obj, const char* key, const std::string& path, double fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) field_error(path + key, "expected a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) field_error(path + key, "expected a finite number");
    return v;
}

long long integer_field(const json& j, const std::string& path) {
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (v == std::floor(v) && std::abs(v) < 1e15) return static_cast<long long>(v);
    }
    field_error(path, "expected an integer");
}

}  // namespace

std::string_view to_string(AngleUnit u) { return u == AngleUnit::Degrees ? "deg" : "rad"; }

double in_unit(double rad, AngleUnit u) { return u == AngleUnit::Degrees ? rad_to_deg(rad) : rad; }

AnalysisConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error at " + location_of(text, e.byte) + ": " + e.what());
    }
    require_object(doc, "");
    reject_unknown(doc, "", {"periodicity", "main", "harmonics", "samples", "taylor_order", "max_order", "units",
                             "term_budget", "outputs"});

    auto p_it = doc.find("periodicity");
    if (p_it == doc.end()) field_error("periodicity", "required field is missing");
    const auto p = integer_field(*p_it, "periodicity");
    if (p < 1 || p > 1'000'000) field_error("periodicity", "must be a positive integer");

    MainHarmonicParams main = MainHarmonicParams::ideal(static_cast<int>(p));
    if (auto it = doc.find("main"); it != doc.end()) {
        const auto& m = require_object(*it, "main");
        reject_unknown(m, "main", {"Ap", "Bp", "theta_p", "psi_p", "A0", "B0"});
        main.Ap = number_or(m, "Ap", "main.", 1.0);
        main.Bp = number_or(m, "Bp", "main.", 1.0);
        main.theta_p = number_or(m, "theta_p", "main.", 0.0);
        main.psi_p = number_or(m, "psi_p", "main.", 0.0);
        main.A0 = number_or(m, "A0", "main.", 0.0);
        main.B0 = number_or(m, "B0", "main.", 0.0);
        if (!(main.Ap > 0.0)) field_error("main.Ap", "must be positive");
        if (!(main.Bp > 0.0)) field_error("main.Bp", "must be positive");
    }

    std::vector<HarmonicComponent> harmonics;
    int max_n = 0;
    if (auto it = doc.find("harmonics"); it != doc.end()) {
        if (!it->is_array()) field_error("harmonics", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "harmonics[" + std::to_string(i) + "]";
            const auto& h = require_object((*it)[i], path);
            reject_unknown(h, path, {"n", "A", "theta", "B", "psi"});
            auto n_it = h.find("n");
            if (n_it == h.end()) field_error(path + ".n", "required field is missing");
            const auto n = integer_field(*n_it, path + ".n");
            if (n < 0 || n > 1'000'000) field_error(path + ".n", "must be a non-negative integer");
            HarmonicComponent c;
            c.n = static_cast<int>(n);
            c.A = number_or(h, "A", path + ".", 0.0);
            c.theta = number_or(h, "theta", path + ".", c.n == 0 ? kPi / 2 : 0.0);
            c.B = number_or(h, "B", path + ".", 0.0);
            c.psi = number_or(h, "psi", path + ".", 0.0);
            max_n = std::max(max_n, c.n);
            harmonics.push_back(c);
        }
    }

    AnalysisConfig cfg;
    try {
        cfg.spec = EncoderSpec(main, std::move(harmonics));
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("invalid encoder spec: ") + e.what());
    }

    if (auto it = doc.find("samples"); it != doc.end()) {
        const auto v = integer_field(*it, "samples");
        if (v < 1 || v > (1LL << 26)) field_error("samples", "must be a positive integer no larger than 2^26");
        cfg.samples = static_cast<std::size_t>(v);
    }
    if (cfg.samples < 8 * static_cast<std::size_t>(cfg.spec.max_order()))
        field_error("samples", "must be at least 8x the highest harmonic order (" +
                                   std::to_string(8 * cfg.spec.max_order()) + ")");

    if (auto it = doc.find("taylor_order"); it != doc.end()) {
        const auto v = integer_field(*it, "taylor_order");
        if (v < 1 || v > 32) field_error("taylor_order", "must be between 1 and 32");
        cfg.taylor_order = static_cast<int>(v);
    }

    cfg.max_order = 4 * (max_n + static_cast<int>(p));
    if (auto it = doc.find("max_order"); it != doc.end()) {
        const auto v = integer_field(*it, "max_order");
        if (v < 0) field_error("max_order", "must be non-negative");
        cfg.max_order = static_cast<int>(v);
    }
    if (2 * static_cast<std::size_t>(cfg.max_order) >= cfg.samples)
        field_error("max_order", "must be below samples/2 = " + std::to_string(cfg.samples / 2));

    if (auto it = doc.find("units"); it != doc.end()) {
        if (!it->is_string()) field_error("units", "expected \"rad\" or \"deg\"");
        const auto u = it->get<std::string>();
        if (u == "rad")
            cfg.units = AngleUnit::Radians;
        else if (u == "deg")
            cfg.units = AngleUnit::Degrees;
        else
            field_error("units", "expected \"rad\" or \"deg\", got \"" + u + "\"");
    }

    if (auto it = doc.find("term_budget"); it != doc.end()) {
        const auto v = integer_field(*it, "term_budget");
        if (v < 1) field_error("term_budget", "must be positive");
        cfg.term_budget = static_cast<std::size_t>(v);
    }

    if (auto it = doc.find("outputs"); it != doc.end()) {
        if (!it->is_array()) field_error("outputs", "expected an array of report names");
        cfg.outputs = {false, false, false};
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& v = (*it)[i];
            const std::string path = "outputs[" + std::to_string(i) + "]";
            if (!v.is_string()) field_error(path, "expected a string");
            const auto name = v.get<std::string>();
            if (name == "trace")
                cfg.outputs.trace = true;
            else if (name == "spectrum")
                cfg.outputs.spectrum = true;
            else if (name == "bounds")
                cfg.outputs.bounds = true;
            else
                field_error(path, "unknown report \"" + name + "\" (trace, spectrum, bounds)");
        }
    }
    return cfg;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string effective_config_json(const AnalysisConfig& config) {
    const auto& m = config.spec.main();
    ordered_json j;
    j["periodicity"] = m.p;
    j["main"] = {{"Ap", m.Ap}, {"Bp", m.Bp}, {"theta_p", m.theta_p}, {"psi_p", m.psi_p}, {"A0", m.A0}, {"B0", m.B0}};
    j["harmonics"] = ordered_json::array();
    for (const auto& c : config.spec.disturbances())
        j["harmonics"].push_back({{"n", c.n}, {"A", c.A}, {"theta", c.theta}, {"B", c.B}, {"psi", c.psi}});
    j["samples"] = config.samples;
    j["taylor_order"] = config.taylor_order;
    j["max_order"] = config.max_order;
    j["units"] = std::string(to_string(config.units));
    j["term_budget"] = config.term_budget;
    j["outputs"] = ordered_json::array();
    if (config.outputs.trace) j["outputs"].push_back("trace");
    if (config.outputs.spectrum) j["outputs"].push_back("spectrum");
    if (config.outputs.bounds) j["outputs"].push_back("bounds");
    return j.dump();
}

}  // namespace encharm::cli
