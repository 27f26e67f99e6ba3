#ifndef PAYGO_PIPELINE_HPP
#define PAYGO_PIPELINE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace paygo {

enum ExitCode : int {
    exit_ok = 0,
    exit_invalid_config = 2,
    exit_ingestion_error = 3,
    exit_no_equilibrium = 4,
};

struct RunConfig {
    std::string country;         // empty = every bundled/ingested country
    std::vector<double> gamma;   // explicit series; overrides the country lookup
    double theta = 2.82;
    double theta_tau = 2.82;
    double phi = 0.2;
    std::optional<double> alpha_tau;  // defaults to gamma_4
    double grid_step = 1e-4;
    int jobs = 1;
    std::string out_dir = ".";
    std::set<std::string> formats{"csv"};
    std::string data_path;            // CSV input; empty = bundled table
    std::string path = "canonical";   // canonical | raw

    void validate() const;  // throws std::invalid_argument
};

// Flat key=value config file; '#' starts a comment. Returns keys it did
// not recognize.
std::vector<std::string> load_config_file(const std::string& path, RunConfig& cfg);

// One country resolved to solver inputs: growth series plus cohort data
// for balance/diagnostic reporting.
struct CountryInputs {
    std::string name;
    std::vector<double> gamma;   // gamma_0..gamma_4
    std::vector<double> alpha;   // alpha_0..alpha_4
    std::vector<double> sizes;   // H_0..H_5 (millions)
    double e0 = 1.0;             // anchor endowment level
};

std::vector<CountryInputs> resolve_inputs(const RunConfig& cfg);

int cmd_series(const RunConfig& cfg);
int cmd_bounds(const RunConfig& cfg);
int cmd_tail(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_design(const RunConfig& cfg);
int cmd_simple(const RunConfig& cfg);

}  // namespace paygo

#endif
