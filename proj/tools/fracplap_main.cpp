// fracplap: fractional p-Laplacian Dirichlet problems -- discretize,
// minimize the energy, and check the existence/multiplicity properties.
//
// Usage:
//   fracplap --config problem.json [--mode verify] [--out results] [--quiet]
//
// Exit codes: 0 pass/success, 1 internal or configuration error,
// 2 search/theorem failure, 3 hypothesis refusal.

#include <iostream>

#include <CLI11.hpp>

#include "fracplap/config.hpp"
#include "fracplap/output.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fractional p-Laplacian variational solver"};

    std::string config_path;
    std::string mode_override;
    std::string out_override;
    bool quiet = false;
    app.add_option("--config", config_path, "JSON problem configuration")->required();
    app.add_option("--mode", mode_override, "override config mode (solve|multistart|verify|embedding|sweep)");
    app.add_option("--out", out_override, "override output directory");
    app.add_flag("--quiet", quiet, "suppress progress output");

    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<std::string> warnings;
        fracplap::RunConfig cfg = fracplap::parse_config(config_path, &warnings);
        for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";

        if (!mode_override.empty()) {
            const auto mode = fracplap::mode_from_string(mode_override);
            if (!mode) {
                std::cerr << "error: unknown mode '" << mode_override << "'\n";
                return 1;
            }
            cfg.mode = *mode;
        }
        if (!out_override.empty()) cfg.output_dir = out_override;

        return fracplap::run(cfg, std::cout, quiet);
    } catch (const fracplap::ConfigError& e) {
        for (const std::string& msg : e.errors()) std::cerr << "config error: " << msg << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
