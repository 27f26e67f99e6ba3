#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "olg/data.hpp"
#include "olg/solver.hpp"
#include "pipeline.hpp"

namespace {

void add_common(CLI::App* sub, paygo::RunConfig& cfg, std::string& config_path) {
    sub->add_option("--country", cfg.country, "Country to run (default: all)");
    sub->add_option("--gamma", cfg.gamma,
                    "Explicit gamma_0..gamma_4 series (overrides --country data)")
        ->expected(5);
    sub->add_option("--theta", cfg.theta, "Preference weight theta (default 2.82)");
    sub->add_option("--theta-tau", cfg.theta_tau, "Tail preference weight (default 2.82)");
    sub->add_option("--phi", cfg.phi, "Old-age endowment share (default 0.2)");
    sub->add_option("--alpha-tau", cfg.alpha_tau,
                    "Tail growth factor (default: gamma_4 of the country)");
    sub->add_option("--grid-step", cfg.grid_step, "a3 sweep grid step (default 1e-4)");
    sub->add_option("--jobs", cfg.jobs, "Sweep worker threads (default 1)");
    sub->add_option("--out", cfg.out_dir, "Output directory (default .)");
    sub->add_option("--format", cfg.formats, "Output formats: csv, json, svg (default csv)")
        ->delimiter(',');
    sub->add_option("--data", cfg.data_path, "Input CSV (default: bundled table)");
    sub->add_option("--path", cfg.path, "Data path: canonical (published tables) or raw");
    sub->add_option("--config", config_path, "Flat key=value config file (flags override it)");
}

int dispatch(int (*fn)(const paygo::RunConfig&), const paygo::RunConfig& cfg) {
    try {
        cfg.validate();
        return fn(cfg);
    } catch (const olg::data::ingest_error& e) {
        std::cerr << "ingestion error: " << e.what() << "\n";
        return paygo::exit_ingestion_error;
    } catch (const olg::solver::no_equilibrium_error& e) {
        std::cerr << "no feasible equilibrium: " << e.what() << "\n";
        return paygo::exit_no_equilibrium;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return paygo::exit_invalid_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pareto-optimal monetary equilibria and balanced pay-as-you-go designs"};
    app.require_subcommand(1);

    paygo::RunConfig cfg;
    std::string config_path;

    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(const paygo::RunConfig&);
    };
    const std::vector<Cmd> cmds{
        {"series", "Reproduce the cohort/endowment tables and derived growth series",
         paygo::cmd_series},
        {"bounds", "Theta lower bounds for prone-to-savings periods", paygo::cmd_bounds},
        {"tail", "Tail characterization: lambda3, a3 interval, tail rate series",
         paygo::cmd_tail},
        {"sweep", "Sweep a3, report feasible intervals and the minimum-variance candidate",
         paygo::cmd_sweep},
        {"design", "Full pipeline: sweep, select, emit the pay-as-you-go design",
         paygo::cmd_design},
        {"simple", "Two-period demo: backward convergence and sensitivity table",
         paygo::cmd_simple},
    };
    for (const auto& c : cmds) add_common(app.add_subcommand(c.name, c.help), cfg, config_path);

    CLI11_PARSE(app, argc, argv);

    // Config file first, command-line flags on top.
    if (!config_path.empty()) {
        paygo::RunConfig file_cfg;
        try {
            const auto unknown = paygo::load_config_file(config_path, file_cfg);
            for (const auto& k : unknown)
                std::cerr << "warning: unknown config key '" << k << "'\n";
        } catch (const std::invalid_argument& e) {
            std::cerr << "invalid config: " << e.what() << "\n";
            return paygo::exit_invalid_config;
        }
        // Re-apply command-line values over the file values.
        CLI::App overlay{""};
        overlay.require_subcommand(1);
        paygo::RunConfig cli_cfg = file_cfg;
        std::string ignored;
        for (const auto& c : cmds) add_common(overlay.add_subcommand(c.name, c.help), cli_cfg, ignored);
        try {
            overlay.parse(argc, argv);
        } catch (const CLI::ParseError&) {
            return paygo::exit_invalid_config;
        }
        cfg = cli_cfg;
    }

    for (const auto& c : cmds)
        if (app.get_subcommand(c.name)->parsed()) return dispatch(c.fn, cfg);
    return paygo::exit_invalid_config;
}
