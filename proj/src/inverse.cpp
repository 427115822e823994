#include "l1fract/inverse.hpp"

#include <algorithm>
#include <cmath>

namespace l1fract {

double clamp_projection(double r, double nu, double lower, double upper) {
    if (!(nu > 0.0)) throw domain_error("clamp_projection: nu must be positive");
    if (!(lower < upper)) throw domain_error("clamp_projection: empty box");
    return std::clamp(-r / nu, lower, upper);
}

namespace {

SpaceTimeField state_of(const InverseProblem& p, const SpaceTimeField& control) {
    return solve_forward(p.system, p.weights, SourceSpec::intervals(control.values),
                         p.grid);
}

SpaceTimeField adjoint_of(const InverseProblem& p, const SpaceTimeField& state) {
    std::vector<double> mismatch(p.system.size());
    const auto yT = state.final_value();
    for (int i = 0; i < p.system.size(); ++i) mismatch[i] = yT[i] - p.target[i];
    return solve_adjoint(p.system, p.weights, SourceSpec::delta_at_final(mismatch),
                         p.grid);
}

}  // namespace

InverseSolution solve_inverse(const InverseProblem& problem, double tol, int max_iter) {
    if (!(tol > 0.0)) throw domain_error("solve_inverse: tol must be positive");
    const int n = problem.system.size();
    const int J = problem.grid.steps;

    SpaceTimeField control;
    control.grid = problem.grid;
    control.values.assign(J, std::vector<double>(n, 0.0));

    double change = std::numeric_limits<double>::infinity();
    int iter = 0;
    std::vector<double> trace;
    SpaceTimeField state = state_of(problem, control);
    while (iter < max_iter) {
        ++iter;
        const auto adj = adjoint_of(problem, state);
        change = 0.0;
        for (int k = 0; k < J; ++k) {
            for (int i = 0; i < n; ++i) {
                const double next = clamp_projection(adj.values[k][i], problem.nu,
                                                     problem.lower, problem.upper);
                change = std::max(change, std::abs(next - control.values[k][i]));
                control.values[k][i] = next;
            }
        }
        state = state_of(problem, control);
        trace.push_back(objective_value(control, state, problem.target, problem.nu,
                                        problem.system.mass));
        if (change < tol) break;
    }
    if (change >= tol)
        throw nonconvergence_error("solve_inverse: iteration cap reached", change, iter);

    InverseSolution sol;
    sol.control = std::move(control);
    sol.state = std::move(state);
    sol.adjoint = adjoint_of(problem, sol.state);
    sol.report.iterations = iter;
    sol.report.final_sup_change = change;
    sol.report.converged = true;
    sol.report.objective = trace.back();
    sol.report.objective_trace = std::move(trace);
    return sol;
}

double optimality_residual(const InverseSolution& solution, const InverseProblem& problem) {
    double res = 0.0;
    for (size_t k = 0; k < solution.control.values.size(); ++k)
        for (size_t i = 0; i < solution.control.values[k].size(); ++i) {
            const double want = clamp_projection(solution.adjoint.values[k][i], problem.nu,
                                                 problem.lower, problem.upper);
            res = std::max(res, std::abs(solution.control.values[k][i] - want));
        }
    return res;
}

double objective_value(const SpaceTimeField& control, const SpaceTimeField& state,
                       std::span<const double> target, double nu, const TriDiag& mass) {
    std::vector<double> mismatch(target.size());
    const auto yT = state.final_value();
    for (size_t i = 0; i < target.size(); ++i) mismatch[i] = yT[i] - target[i];
    double obj = 0.5 * mass_inner(mass, mismatch, mismatch);
    double reg = 0.0;
    for (const auto& uk : control.values) reg += mass_inner(mass, uk, uk);
    obj += 0.5 * nu * control.grid.tau() * reg;
    return obj;
}

}  // namespace l1fract
