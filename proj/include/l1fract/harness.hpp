#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "l1fract/errors.hpp"

namespace l1fract {

/// Scale and problem parameters for the three convergence experiments.
/// Defaults are desk scale; the paper-scale run (cells 2^10, ref 2^15)
/// is selected by the CLI's --heavy flag.
struct ExperimentConfig {
    std::vector<double> alphas{0.5};
    std::vector<int> step_counts{32, 64, 128, 256, 512};
    int ref_steps = 4096;
    int cells = 256;
    double final_time = 0.1;
    double nu = 10.0;
    double lower = 0.0;
    double upper = 10.0;
    std::string target = "const:1";
    double tol = 1e-12;
    int max_iter = 10000;
    std::string out_dir = "out";
    std::uint64_t seed = 0x5eedcafe;
    bool heavy = false;

    void validate() const;  // throws config_error
};

struct RateRow {
    double alpha = 0.0;
    int steps = 0;
    std::vector<double> values;  // parallel to RateTable::value_names
};

struct RateFit {
    double alpha = 0.0;
    std::string column;
    double slope = 0.0;
    std::vector<double> pairwise;  // log2(e_J / e_{2J}) per adjacent level
};

struct RateTable {
    std::string name;
    std::vector<std::string> value_names;
    std::vector<RateRow> rows;   // sorted by (alpha, steps)
    std::vector<RateFit> fits;
    double wall_seconds = 0.0;
};

/// Least-squares slope of log(error) against log(1/J) plus pairwise
/// halving rates. Nonpositive errors are dropped (counted in *excluded);
/// fewer than two usable rows is an error.
std::pair<double, std::vector<double>> fit_rate(
    const std::vector<std::pair<int, double>>& rows, int* excluded = nullptr);

/// Delta-source self-convergence study: e_T, e_l1 and the Table-1 ratio
/// e_T / (tau^{alpha-1} J^{alpha-2}) per (alpha, J).
RateTable experiment1(const ExperimentConfig& config);

/// Constant-source self-convergence study: e_inf per (alpha, J).
RateTable experiment2(const ExperimentConfig& config);

/// Inverse-problem self-convergence study: combined state+control error,
/// iteration counts and optimality residuals per (alpha, J).
RateTable experiment3(const ExperimentConfig& config);

/// Write one CSV per table plus a JSON run manifest into config.out_dir.
/// Returns the paths written. Row order is deterministic.
std::vector<std::string> emit(const std::vector<RateTable>& tables,
                              const ExperimentConfig& config);

/// Parse "const:<v>" or "power:<p>" into nodal coefficients on the mesh.
std::vector<double> parse_target(const std::string& spec, int cells);

}  // namespace l1fract
