#pragma once

#include <complex>
#include <vector>

#include "l1fract/errors.hpp"

namespace l1fract {

/// Diagnostics of the discrete symbol psi(z) = (e^z-1)^2 bhat(z):
/// positivity of Re(e^{-iy} psi(iy)) on the imaginary axis, the fitted
/// constants of the sector lower bound |e^{-z}psi(z)| >= c|z|^alpha and of
/// |psi(z) - z^alpha| <= C|z|^{alpha+1}, and the largest argument of
/// e^{-z}psi(z) seen on the sampled contour.
struct SymbolReport {
    double alpha = 0.0;
    double theta_star = 0.0;
    double min_re_psi_on_imag_axis = 0.0;
    double lower_constant = 0.0;  // min |e^{-z}psi|/|z|^a over the contour
    double upper_constant = 0.0;  // max |psi - z^a|/|z|^{a+1} over the contour
    double max_arg = 0.0;         // max |Arg(e^{-z}psi)| over the contour
    std::vector<double> imag_axis_y;            // sampled y on {iy}
    std::vector<double> imag_axis_re;           // Re(e^{-iy} psi(iy))
    std::vector<std::complex<double>> contour;  // sampled z on Upsilon_{theta*}
};

/// Discrete Laplace symbol of the L1 weights, evaluated by the residue
/// series sum_{k=-K}^{K} (z + 2k*pi*i)^{alpha-2}. The truncated tail is
/// replaced by the exact integral of the summand from +-(K+1/2) outward
/// (midpoint rule in reverse), which leaves a remainder O(K^{alpha-3});
/// that remainder estimate is checked against tail_tol.
std::complex<double> eval_bhat(std::complex<double> z, double alpha,
                               int truncation = 10000, double tail_tol = 1e-8);

/// psi(z) = (e^z - 1)^2 * bhat(z).
std::complex<double> eval_psi(std::complex<double> z, double alpha,
                              int truncation = 10000, double tail_tol = 1e-8);

/// Sample the symbol on {iy : 0.05 <= y <= pi} and on the finite contour
/// Upsilon_{theta_star} (|z| in [1e-4, pi/sin(theta_star)]) and fit the
/// lemma constants. Throws domain_error when n_samples < 8.
SymbolReport symbol_diagnostics(double alpha,
                                double theta_star = 1.7671458676442586,  // 9*pi/16
                                int n_samples = 256);

}  // namespace l1fract
