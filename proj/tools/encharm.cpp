#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "encharm/cli/commands.hpp"
#include "encharm/errors.hpp"

namespace {

namespace ec = encharm::cli::exit_code;

encharm::cli::AngleUnit parse_units(const std::string& s) {
    return s == "deg" ? encharm::cli::AngleUnit::Degrees : encharm::cli::AngleUnit::Radians;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic error analysis for sine/cosine angle encoders"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir = ".";
    auto* analyze = app.add_subcommand("analyze", "Exact, Taylor and bound analysis; writes CSV/JSON reports");
    analyze->add_option("--config", config_path, "JSON config file")->required();
    analyze->add_option("--output-dir", output_dir, "Directory for error_trace.csv, spectrum.csv, bounds.json");

    auto* lissajous = app.add_subcommand("lissajous", "Per-sample (b, a) signal pairs and exact error as CSV");
    lissajous->add_option("--config", config_path, "JSON config file")->required();

    std::string variant_name;
    encharm::cli::CatalogRequest request;
    std::string units = "rad";
    auto* catalog = app.add_subcommand("catalog", "Closed-form mismatch spectrum and engine consistency as JSON");
    catalog->add_option("variant", variant_name, "offset | amplitude | phase | offset-amplitude | offset-phase | "
                                                 "amplitude-phase | offset-amplitude-phase")
        ->required();
    catalog->add_option("--a0", request.params.A0, "Sine channel offset");
    catalog->add_option("--b0", request.params.B0, "Cosine channel offset");
    catalog->add_option("--an", request.params.An, "Sine channel amplitude deviation");
    catalog->add_option("--bn", request.params.Bn, "Cosine channel amplitude deviation");
    catalog->add_option("--delta", request.params.delta_p, "Phase mismatch in radians");
    catalog->add_option("-p", request.p, "Periodicity")->check(CLI::PositiveNumber);
    catalog->add_option("--units", units, "Output angle unit")->check(CLI::IsMember({"rad", "deg"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ec::ok : ec::config;
    }

    try {
        if (*analyze) {
            const auto cfg = encharm::cli::load_config(config_path);
            return encharm::cli::cmd_analyze(cfg, output_dir, std::cerr);
        }
        if (*lissajous) {
            const auto cfg = encharm::cli::load_config(config_path);
            std::cout << encharm::cli::lissajous_csv(cfg);
            return ec::ok;
        }
        const auto variant = encharm::parse_variant(variant_name);
        if (!variant) {
            std::cerr << "error: unknown variant '" << variant_name << "'\n" << catalog->help();
            return ec::config;
        }
        request.variant = *variant;
        request.units = parse_units(units);
        std::cout << encharm::cli::catalog_json(request);
        return ec::ok;
    } catch (const encharm::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ec::config;
    } catch (const encharm::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ec::domain;
    } catch (const encharm::ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ec::resource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
