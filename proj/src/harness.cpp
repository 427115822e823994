#include "l1fract/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "l1fract/evolve.hpp"
#include "l1fract/fem1d.hpp"
#include "l1fract/inverse.hpp"

namespace l1fract {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// coarse interval index holding fine right-endpoint t*_j (paper's ceil map)
int coarse_index(long j, long coarse_steps, long fine_steps) {
    return static_cast<int>((j * coarse_steps + fine_steps - 1) / fine_steps);
}

struct Workspace {
    SpaceMesh1D mesh;
    AssembledSystem system;
    std::vector<double> profile;  // projection of x^{-0.49}

    explicit Workspace(const ExperimentConfig& c)
        : mesh(0.0, 1.0, c.cells),
          system(assemble(mesh, OperatorCoefficients::laplacian())),
          profile(project_load(mesh, PowerProfile{-0.49})) {}
};

void fit_all(RateTable& table, const std::vector<double>& alphas,
             const std::vector<std::string>& columns) {
    for (double a : alphas) {
        for (const auto& col : columns) {
            const auto it = std::find(table.value_names.begin(), table.value_names.end(), col);
            const size_t ci = it - table.value_names.begin();
            std::vector<std::pair<int, double>> pts;
            for (const auto& r : table.rows)
                if (r.alpha == a) pts.emplace_back(r.steps, r.values[ci]);
            RateFit fit;
            fit.alpha = a;
            fit.column = col;
            try {
                auto [slope, pairwise] = fit_rate(pts);
                fit.slope = slope;
                fit.pairwise = std::move(pairwise);
            } catch (const domain_error&) {
                fit.slope = std::numeric_limits<double>::quiet_NaN();
            }
            table.fits.push_back(std::move(fit));
        }
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (alphas.empty()) throw config_error("config: need at least one alpha");
    for (double a : alphas)
        if (!(a > 0.0 && a < 1.0)) throw config_error("config: alpha outside (0,1)");
    if (step_counts.empty()) throw config_error("config: need at least one step count");
    for (int J : step_counts) {
        if (J < 1) throw config_error("config: step counts must be positive");
        if (J > ref_steps) throw config_error("config: reference must be finer than J");
        if (ref_steps % J != 0)
            throw config_error("config: every J must divide the reference steps");
    }
    if (cells < 2) throw config_error("config: need at least 2 cells");
    if (!(final_time > 0.0)) throw config_error("config: final time must be positive");
    if (!(nu > 0.0)) throw config_error("config: nu must be positive");
    if (!(lower < upper)) throw config_error("config: empty control box");
    if (!(tol > 0.0)) throw config_error("config: tol must be positive");
    if (max_iter < 1) throw config_error("config: max_iter must be positive");
}

std::pair<double, std::vector<double>> fit_rate(
    const std::vector<std::pair<int, double>>& rows, int* excluded) {
    std::vector<std::pair<int, double>> usable;
    for (const auto& [J, e] : rows)
        if (e > 0.0 && std::isfinite(e)) usable.emplace_back(J, e);
    if (excluded) *excluded = static_cast<int>(rows.size() - usable.size());
    if (usable.size() < 2)
        throw domain_error("fit_rate: fewer than 2 usable rows");
    std::sort(usable.begin(), usable.end());

    // least squares of log e against log(1/J)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [J, e] : usable) {
        const double x = -std::log(static_cast<double>(J));
        const double y = std::log(e);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double n = static_cast<double>(usable.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    std::vector<double> pairwise;
    for (size_t i = 0; i + 1 < usable.size(); ++i) {
        const double steps_ratio =
            std::log2(double(usable[i + 1].first) / usable[i].first);
        pairwise.push_back(std::log2(usable[i].second / usable[i + 1].second) /
                           steps_ratio);
    }
    return {slope, pairwise};
}

RateTable experiment1(const ExperimentConfig& config) {
    config.validate();
    const auto t0 = clock_type::now();
    Workspace ws(config);

    RateTable table;
    table.name = "experiment1";
    table.value_names = {"e_T", "e_l1", "ratio_table1"};

    for (double alpha : config.alphas) {
        const TimeGrid ref_grid(config.final_time, config.ref_steps);
        const auto ref_w = make_weights(alpha, config.ref_steps);
        const auto ref = solve_forward(ws.system, ref_w,
                                       SourceSpec::delta_at_zero(ws.profile), ref_grid);
        const double tau_ref = ref_grid.tau();
        for (int J : config.step_counts) {
            const TimeGrid grid(config.final_time, J);
            const auto w = make_weights(alpha, J);
            const auto sol = solve_forward(ws.system, w,
                                           SourceSpec::delta_at_zero(ws.profile), grid);
            std::vector<double> diff(ws.system.size());
            const auto& fine_T = ref.values.back();
            const auto& coarse_T = sol.values.back();
            for (int i = 0; i < ws.system.size(); ++i) diff[i] = coarse_T[i] - fine_T[i];
            const double e_T = mass_norm(ws.system.mass, diff);

            double e_l1 = 0.0;
            for (int j = 1; j <= config.ref_steps; ++j) {
                const auto& coarse = sol.values[coarse_index(j, J, config.ref_steps) - 1];
                const auto& fine = ref.values[j - 1];
                for (int i = 0; i < ws.system.size(); ++i) diff[i] = coarse[i] - fine[i];
                e_l1 += tau_ref * mass_norm(ws.system.mass, diff);
            }

            const double tau = grid.tau();
            const double ratio =
                e_T / (std::pow(tau, alpha - 1.0) * std::pow(double(J), alpha - 2.0));
            table.rows.push_back({alpha, J, {e_T, e_l1, ratio}});
        }
    }
    fit_all(table, config.alphas, {"e_T", "e_l1"});
    table.wall_seconds = seconds_since(t0);
    return table;
}

RateTable experiment2(const ExperimentConfig& config) {
    config.validate();
    const auto t0 = clock_type::now();
    Workspace ws(config);

    RateTable table;
    table.name = "experiment2";
    table.value_names = {"e_inf"};

    for (double alpha : config.alphas) {
        const TimeGrid ref_grid(config.final_time, config.ref_steps);
        const auto ref_w = make_weights(alpha, config.ref_steps);
        const auto ref = solve_forward(
            ws.system, ref_w, as_interval_averages(ws.profile, ref_grid), ref_grid);
        for (int J : config.step_counts) {
            const TimeGrid grid(config.final_time, J);
            const auto w = make_weights(alpha, J);
            const auto sol = solve_forward(ws.system, w,
                                           as_interval_averages(ws.profile, grid), grid);
            std::vector<double> diff(ws.system.size());
            double e_inf = 0.0;
            const long stride = config.ref_steps / J;
            for (int j = 1; j <= J; ++j) {
                const auto& coarse = sol.values[j - 1];
                const auto& fine = ref.values[j * stride - 1];  // same time t_j
                for (int i = 0; i < ws.system.size(); ++i) diff[i] = coarse[i] - fine[i];
                e_inf = std::max(e_inf, mass_norm(ws.system.mass, diff));
            }
            table.rows.push_back({alpha, J, {e_inf}});
        }
    }
    fit_all(table, config.alphas, {"e_inf"});
    table.wall_seconds = seconds_since(t0);
    return table;
}

RateTable experiment3(const ExperimentConfig& config) {
    config.validate();
    const auto t0 = clock_type::now();
    Workspace ws(config);
    const auto target = parse_target(config.target, config.cells);

    RateTable table;
    table.name = "experiment3";
    table.value_names = {"error", "iterations", "optimality_residual"};

    for (double alpha : config.alphas) {
        const TimeGrid ref_grid(config.final_time, config.ref_steps);
        const InverseProblem ref_problem(ws.system, make_weights(alpha, config.ref_steps),
                                         ref_grid, target, config.nu, config.lower,
                                         config.upper);
        const auto ref = solve_inverse(ref_problem, config.tol, config.max_iter);
        const double tau_ref = ref_grid.tau();

        for (int J : config.step_counts) {
            const TimeGrid grid(config.final_time, J);
            const InverseProblem problem(ws.system, make_weights(alpha, J), grid, target,
                                         config.nu, config.lower, config.upper);
            const auto sol = solve_inverse(problem, config.tol, config.max_iter);

            std::vector<double> diff(ws.system.size());
            const auto yT = sol.state.final_value();
            const auto yT_ref = ref.state.final_value();
            for (int i = 0; i < ws.system.size(); ++i) diff[i] = yT[i] - yT_ref[i];
            double err = mass_norm(ws.system.mass, diff);

            double u_sq = 0.0;
            for (int j = 1; j <= config.ref_steps; ++j) {
                const auto& coarse =
                    sol.control.values[coarse_index(j, J, config.ref_steps) - 1];
                const auto& fine = ref.control.values[j - 1];
                for (int i = 0; i < ws.system.size(); ++i) diff[i] = coarse[i] - fine[i];
                u_sq += tau_ref * mass_inner(ws.system.mass, diff, diff);
            }
            err += std::sqrt(std::max(0.0, u_sq));

            table.rows.push_back({alpha, J,
                                  {err, double(sol.report.iterations),
                                   optimality_residual(sol, problem)}});
        }
    }
    fit_all(table, config.alphas, {"error"});
    table.wall_seconds = seconds_since(t0);
    return table;
}

std::vector<double> parse_target(const std::string& spec, int cells) {
    const SpaceMesh1D mesh(0.0, 1.0, cells);
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    try {
        if (kind == "const") {
            const double v = arg.empty() ? 1.0 : std::stod(arg);
            return project_load(mesh, [v](double) { return v; });
        }
        if (kind == "power") return project_load(mesh, PowerProfile{std::stod(arg)});
    } catch (const std::invalid_argument&) {
        throw config_error("target: bad numeric argument in '" + spec + "'");
    }
    throw config_error("target: expected const:<v> or power:<p>, got '" + spec + "'");
}

std::vector<std::string> emit(const std::vector<RateTable>& tables,
                              const ExperimentConfig& config) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw io_error("emit: cannot create directory " + config.out_dir);

    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };

    std::vector<std::string> written;
    nlohmann::json manifest;
    manifest["tool"] = "l1fract";
    manifest["version"] = "0.1.0";
    manifest["config"] = {
        {"alphas", config.alphas},       {"steps", config.step_counts},
        {"ref_steps", config.ref_steps}, {"cells", config.cells},
        {"final_time", config.final_time}, {"nu", config.nu},
        {"lower", config.lower},         {"upper", config.upper},
        {"target", config.target},       {"tol", config.tol},
        {"max_iter", config.max_iter},   {"out", config.out_dir},
        {"seed", config.seed},           {"heavy", config.heavy}};

    for (const auto& table : tables) {
        const std::string path = (fs::path(config.out_dir) / (table.name + ".csv")).string();
        std::ofstream out(path);
        if (!out) throw io_error("emit: cannot open " + path);
        out << "alpha,J";
        for (const auto& c : table.value_names) out << "," << c;
        out << "\n";
        auto rows = table.rows;
        std::sort(rows.begin(), rows.end(), [](const RateRow& a, const RateRow& b) {
            return std::tie(a.alpha, a.steps) < std::tie(b.alpha, b.steps);
        });
        for (const auto& r : rows) {
            out << fmt(r.alpha) << "," << r.steps;
            for (double v : r.values) out << "," << fmt(v);
            out << "\n";
        }
        if (!out) throw io_error("emit: write failed on " + path);
        written.push_back(path);

        if (!table.fits.empty()) {
            const std::string rpath =
                (fs::path(config.out_dir) / (table.name + "_rates.csv")).string();
            std::ofstream rout(rpath);
            if (!rout) throw io_error("emit: cannot open " + rpath);
            rout << "alpha,column,slope,pairwise_rates\n";
            for (const auto& f : table.fits) {
                rout << fmt(f.alpha) << "," << f.column << "," << fmt(f.slope) << ",";
                for (size_t i = 0; i < f.pairwise.size(); ++i)
                    rout << (i ? ";" : "") << fmt(f.pairwise[i]);
                rout << "\n";
            }
            written.push_back(rpath);
        }
        manifest["wall_seconds"][table.name] = table.wall_seconds;
    }

    const std::string mpath = (fs::path(config.out_dir) / "manifest.json").string();
    std::ofstream mout(mpath);
    if (!mout) throw io_error("emit: cannot open " + mpath);
    mout << manifest.dump(2) << "\n";
    written.push_back(mpath);
    return written;
}

}  // namespace l1fract
