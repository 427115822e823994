#pragma once

#include <functional>
#include <span>
#include <vector>

#include "l1fract/errors.hpp"
#include "l1fract/fem1d.hpp"
#include "l1fract/l1_weights.hpp"
#include "l1fract/time_grid.hpp"
#include "l1fract/tridiag.hpp"

namespace l1fract {

/// Right-hand side of a time march. Either interval averages
/// gbar_k = tau^{-1} int_{t_{k-1}}^{t_k} g dt (nodal vectors, k = 1..J),
/// or a Dirac mass in time mollified onto the first/last interval.
struct SourceSpec {
    enum class Kind { interval_averages, delta_at_zero, delta_at_final };
    Kind kind = Kind::interval_averages;
    std::vector<std::vector<double>> averages;  // J vectors for interval_averages
    std::vector<double> impulse;                // nodal v for the delta kinds

    static SourceSpec intervals(std::vector<std::vector<double>> avg) {
        SourceSpec s;
        s.kind = Kind::interval_averages;
        s.averages = std::move(avg);
        return s;
    }
    static SourceSpec delta_at_zero(std::vector<double> v) {
        SourceSpec s;
        s.kind = Kind::delta_at_zero;
        s.impulse = std::move(v);
        return s;
    }
    static SourceSpec delta_at_final(std::vector<double> v) {
        SourceSpec s;
        s.kind = Kind::delta_at_final;
        s.impulse = std::move(v);
        return s;
    }
};

/// Piecewise-constant-in-time, nodal-in-space field: values[k-1] is the
/// value on (t_{k-1}, t_k), which is also the nodal solution at t_k-.
struct SpaceTimeField {
    TimeGrid grid;
    std::vector<std::vector<double>> values;

    std::span<const double> at_step(int k) const { return values[k - 1]; }
    std::span<const double> final_value() const { return values.back(); }
};

/// Finite contour Upsilon_{theta}: rays Arg z = +-theta truncated at
/// |Im z| = pi, with an origin arc of radius epsilon.
struct ContourSpec {
    double angle = 1.7671458676442586;  // 9*pi/16
    int nodes_per_arm = 64;
    double origin_radius = 0.05;
};

/// March eq. (L1 forward): (b_1 M + tau^a (-A)) W_k =
/// tau^a M gbar_k - M sum_{j<k} d_{k-j} W_j. DeltaAtFinal is rejected.
SpaceTimeField solve_forward(const AssembledSystem& system, const L1Weights& weights,
                             const SourceSpec& source, const TimeGrid& grid);

/// Backward march on the transposed operator; DeltaAtZero is rejected.
SpaceTimeField solve_adjoint(const AssembledSystem& system, const L1Weights& weights,
                             const SourceSpec& source, const TimeGrid& grid);

/// tau * sum_k F_k' M G_k, the Omega x (0,T) inner product of two
/// piecewise-constant-in-time fields.
double spacetime_inner(const AssembledSystem& system, const SpaceTimeField& F,
                       const SpaceTimeField& G);
double spacetime_inner(const AssembledSystem& system,
                       const std::vector<std::vector<double>>& F,
                       const SpaceTimeField& G);

/// Action of the discrete contour kernel: (1/2 pi i) int_{Upsilon}
/// e^{jz} R(tau^{-a} e^{-z} psi(z), A) M-resolvent of v. Each node costs
/// one complex tridiagonal solve (tau^{-a} e^{-z} psi(z) M - A) u = M v.
std::vector<double> discrete_kernel_apply(const AssembledSystem& system, double alpha,
                                          double tau, int step,
                                          std::span<const double> v,
                                          const ContourSpec& contour = {});

/// Interval averages of g(t,x): exact for time-constant g, 2-point Gauss
/// in time otherwise.
SourceSpec as_interval_averages(const std::function<double(double, double)>& g,
                                const TimeGrid& grid, const SpaceMesh1D& mesh);
/// Time-constant profile given by nodal coefficients (already projected).
SourceSpec as_interval_averages(std::span<const double> profile, const TimeGrid& grid);

}  // namespace l1fract
