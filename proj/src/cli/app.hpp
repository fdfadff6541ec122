#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pin/types.hpp"

namespace pin::cli {

/// Run parameters; file values first, command-line flags override.
struct RunConfig {
    std::map<std::string, std::string> positions;  // asset class -> CSV path
    std::string deflator_path;
    std::string registry_path;
    std::string series_path;

    int base_year = 2013;
    std::map<std::string, double> e_th = {{"E", 52.0}, {"LD", 52.0}, {"SD", 5.5}};

    // percolation
    double grid_lo = 1.0;
    double grid_hi = 1000.0;
    int grid_count = 500;
    double percolation_delta = 0.1;
    int percolation_window = 5;

    // node-removal search
    int search_samples = 10000;
    int search_rounds = 5;
    double lift_level = 0.5;
    int search_year_lo = 2005;
    int search_year_hi = 2008;
    int top_k = 10;
    int search_n_max = 10;
    std::string search_class = "E";

    // model fit
    std::vector<int> dt_grid = {12, 6, 0, -6, -12};
    std::string fit_reference;                       // "YYYY-MM"
    std::map<std::string, std::string> fit_reference_overrides;
    std::vector<std::string> fit_targets;
    std::string fit_density_class = "LD";
    std::string gdp_series;
    double accept_threshold = 0.9;
    double conditional_threshold = 0.85;

    // warning
    std::string warn_derivative;
    std::string warn_rv;
    double warn_f_max = 0.56;

    std::uint64_t seed = 42;
    std::string output_dir = "out";

    std::uint64_t config_hash() const;
};

/// Loads a JSON config file into a default-initialised RunConfig.
RunConfig load_config(const std::string& path);

/// Entry point used by both the binary and the integration tests.
/// argv excludes the program name. Returns the process exit code:
/// 0 success, 1 input error, 2 invariant or numerical error.
int run(const std::vector<std::string>& argv);

}  // namespace pin::cli
