#pragma once

#include <span>
#include <vector>

#include "l1fract/evolve.hpp"
#include "l1fract/fem1d.hpp"
#include "l1fract/l1_weights.hpp"
#include "l1fract/time_grid.hpp"

namespace l1fract {

/// Tikhonov-regularized source identification: minimize
/// 1/2 ||(S_tau U)(T-) - y_d||^2 + (nu/2) ||U||^2 over the box
/// u_lower <= U <= u_upper. nu = 0 is rejected.
struct InverseProblem {
    AssembledSystem system;
    L1Weights weights;
    TimeGrid grid;
    std::vector<double> target;  // y_d, nodal
    double nu = 10.0;
    double lower = 0.0;
    double upper = 10.0;

    InverseProblem(AssembledSystem sys, L1Weights w, TimeGrid g,
                   std::vector<double> y_d, double nu_, double lo, double hi)
        : system(std::move(sys)), weights(std::move(w)), grid(g),
          target(std::move(y_d)), nu(nu_), lower(lo), upper(hi) {
        if (!(nu > 0.0)) throw domain_error("InverseProblem: nu must be positive");
        if (!(lower < upper)) throw domain_error("InverseProblem: empty control box");
        if (static_cast<int>(target.size()) != system.size())
            throw domain_error("InverseProblem: target dimension mismatch");
    }
};

struct IterationReport {
    int iterations = 0;
    double final_sup_change = 0.0;
    bool converged = false;
    double objective = 0.0;
    std::vector<double> objective_trace;  // J_tau(U_j) per iteration
};

struct InverseSolution {
    SpaceTimeField control;  // U
    SpaceTimeField state;    // Y = S_tau U
    SpaceTimeField adjoint;  // P = S_tau*((Y(T-) - y_d) delta_T)
    IterationReport report;
};

/// Pointwise minimizer of r v + (nu/2) v^2 over [lower, upper]:
/// clamp(-r/nu). The branch boundaries agree with the paper's piecewise
/// projection formula (r > -nu u_* selects the lower bound, r < -nu u^*
/// the upper).
double clamp_projection(double r, double nu, double lower, double upper);

/// Fixed-point iteration U <- clamp(-S*((S U)(T-) - y_d) hat-delta_T / nu),
/// started at U = 0, stopped when the sup change drops below tol.
/// Throws nonconvergence_error at max_iter.
InverseSolution solve_inverse(const InverseProblem& problem, double tol = 1e-12,
                              int max_iter = 10000);

/// sup |U - clamp(-P/nu)| over all intervals and nodes; zero iff the
/// discrete variational inequality holds pointwise.
double optimality_residual(const InverseSolution& solution, const InverseProblem& problem);

/// 1/2 (Y_J - y_d)' M (Y_J - y_d) + (nu/2) tau sum_k U_k' M U_k.
double objective_value(const SpaceTimeField& control, const SpaceTimeField& state,
                       std::span<const double> target, double nu, const TriDiag& mass);

}  // namespace l1fract
