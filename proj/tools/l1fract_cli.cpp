#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <random>

#include "l1fract/evolve.hpp"
#include "l1fract/harness.hpp"
#include "l1fract/inverse.hpp"
#include "l1fract/oracle.hpp"
#include "l1fract/symbol.hpp"

namespace {

using namespace l1fract;

void add_common(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--alpha", cfg.alphas, "fractional orders (comma list)")
        ->delimiter(',');
    cmd->add_option("--steps", cfg.step_counts, "coarse step counts J (comma list)")
        ->delimiter(',');
    cmd->add_option("--ref-steps", cfg.ref_steps, "reference step count");
    cmd->add_option("--cells", cfg.cells, "spatial cells");
    cmd->add_option("--final-time", cfg.final_time, "final time T");
    cmd->add_option("--nu", cfg.nu, "regularization weight");
    cmd->add_option("--lower", cfg.lower, "control lower bound");
    cmd->add_option("--upper", cfg.upper, "control upper bound");
    cmd->add_option("--target", cfg.target, "target y_d: const:<v> or power:<p>");
    cmd->add_option("--tol", cfg.tol, "fixed-point tolerance");
    cmd->add_option("--max-iter", cfg.max_iter, "fixed-point iteration cap");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--seed", cfg.seed, "seed for randomized checks");
    cmd->add_flag("--heavy", cfg.heavy, "paper-scale settings (slow)");
}

void apply_heavy(CLI::App* cmd, ExperimentConfig& cfg, bool table1_alphas) {
    if (!cfg.heavy) return;
    if (!cmd->count("--cells")) cfg.cells = 1 << 10;
    if (!cmd->count("--ref-steps")) cfg.ref_steps = 1 << 15;
    if (!cmd->count("--steps")) cfg.step_counts = {1 << 7, 1 << 8, 1 << 9};
    if (table1_alphas && !cmd->count("--alpha"))
        cfg.alphas = {0.90, 0.95, 0.99, 0.999};
}

void print_fits(const RateTable& table) {
    std::printf("%s (%.1fs):\n", table.name.c_str(), table.wall_seconds);
    for (const auto& r : table.rows) {
        std::printf("  alpha=%-6g J=%-6d", r.alpha, r.steps);
        for (size_t i = 0; i < r.values.size(); ++i)
            std::printf(" %s=%.6g", table.value_names[i].c_str(), r.values[i]);
        std::printf("\n");
    }
    for (const auto& f : table.fits)
        std::printf("  fitted slope alpha=%g %s: %.4f\n", f.alpha, f.column.c_str(),
                    f.slope);
}

int run_diagnostics(const ExperimentConfig& cfg) {
    std::printf("symbol diagnostics (theta* = 9pi/16):\n");
    std::vector<RateTable> tables;
    RateTable table;
    table.name = "diagnostics";
    table.value_names = {"min_re_psi", "lower_c", "upper_C", "max_arg"};
    for (double a : cfg.alphas) {
        const auto rep = symbol_diagnostics(a);
        std::printf("  alpha=%-5g min Re(e^{-iy}psi(iy))=%.5f  c=%.4f  C=%.4f  "
                    "max|Arg|=%.4f\n",
                    a, rep.min_re_psi_on_imag_axis, rep.lower_constant,
                    rep.upper_constant, rep.max_arg);
        table.rows.push_back({a, 0,
                              {rep.min_re_psi_on_imag_axis, rep.lower_constant,
                               rep.upper_constant, rep.max_arg}});
    }
    tables.push_back(std::move(table));
    for (const auto& p : emit(tables, cfg)) std::printf("wrote %s\n", p.c_str());
    return 0;
}

int run_oracle_check(const ExperimentConfig& cfg) {
    int failures = 0;
    auto check = [&](bool ok, const char* what, double got) {
        std::printf("  [%s] %s (%.3g)\n", ok ? "PASS" : "FAIL", what, got);
        if (!ok) ++failures;
    };

    const double e_exp = std::abs(mittag_leffler(1.0, 1.0, 1.0) - std::exp(1.0));
    check(e_exp < 1e-10, "E_{1,1}(1) = e", e_exp);
    const double e_erfc =
        std::abs(mittag_leffler(0.5, 1.0, -1.0) - 0.42758357615580700127);
    check(e_erfc < 1e-10, "E_{1/2,1}(-1) = e erfc(1)", e_erfc);

    const SpaceMesh1D mesh(0.0, 1.0, 16);
    const auto system = assemble(mesh, OperatorCoefficients::laplacian());
    const auto spectral = generalized_eigendecomposition(system);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss;
    std::vector<double> v(system.size());
    for (auto& x : v) x = gauss(rng);
    const double alpha = cfg.alphas.empty() ? 0.5 : cfg.alphas.front();
    for (double t : {0.01, 0.05, 0.1}) {
        const auto a = kernel_contour_continuous(system, alpha, t, v);
        const auto b = semidiscrete_delta(spectral, system.mass, alpha, v, t);
        double diff = 0.0, scale = 1.0;
        for (int i = 0; i < system.size(); ++i) {
            diff = std::max(diff, std::abs(a[i] - b[i]));
            scale = std::max(scale, std::abs(b[i]));
        }
        check(diff / scale < 1e-8, "contour vs spectral kernel", diff / scale);
    }
    return failures ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"L1-scheme solver and experiment harness for time-fractional "
                 "diffusion and its inverse source problem"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    auto* exp1 = app.add_subcommand("exp1", "delta-source convergence study");
    auto* exp2 = app.add_subcommand("exp2", "constant-source convergence study");
    auto* exp3 = app.add_subcommand("exp3", "inverse-problem convergence study");
    auto* diag = app.add_subcommand("diagnostics", "discrete-symbol diagnostics");
    auto* orac = app.add_subcommand("oracle-check", "cross-check the two oracles");
    for (auto* cmd : {exp1, exp2, exp3, diag, orac}) add_common(cmd, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<RateTable> tables;
        if (exp1->parsed()) {
            apply_heavy(exp1, cfg, true);
            tables.push_back(experiment1(cfg));
        } else if (exp2->parsed()) {
            apply_heavy(exp2, cfg, false);
            tables.push_back(experiment2(cfg));
        } else if (exp3->parsed()) {
            if (cfg.heavy)
                std::fprintf(stderr, "note: --heavy ignored for exp3 (cost)\n");
            tables.push_back(experiment3(cfg));
        } else if (diag->parsed()) {
            return run_diagnostics(cfg);
        } else if (orac->parsed()) {
            return run_oracle_check(cfg);
        }
        for (const auto& t : tables) print_fits(t);
        for (const auto& p : emit(tables, cfg)) std::printf("wrote %s\n", p.c_str());
        return 0;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
}
