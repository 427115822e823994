#pragma once

#include <span>
#include <vector>

#include "l1fract/fem1d.hpp"
#include "l1fract/mittag_leffler.hpp"

namespace l1fract {

/// Exact semidiscrete solutions built on the generalized eigenpairs of
/// (M, -A). These isolate the temporal error of the L1 march: comparing
/// against them removes all spatial discretization error.

/// E(t)v = sum_i t^{a-1} E_{a,a}(-mu_i t^a) (phi_i' M v) phi_i, t > 0.
std::vector<double> semidiscrete_delta(const SpectralData& spectral, const TriDiag& mass,
                                       double alpha, std::span<const double> v, double t);

/// Solution of D^a y - A y = g (time-constant g) with y(0) = 0:
/// y(t) = sum_i t^a E_{a,a+1}(-mu_i t^a) (phi_i' M g) phi_i.
std::vector<double> semidiscrete_constant_source(const SpectralData& spectral,
                                                 const TriDiag& mass, double alpha,
                                                 std::span<const double> g, double t);

/// Contour for the continuous kernel E(t) = (1/2 pi i) int e^{tz}
/// R(z^a, A) dz: rays at +-omega truncated where |e^{tz}| drops below
/// 10^{-truncation_digits}, an origin arc of radius min(1, 1/t).
struct ContinuousContourSpec {
    double angle = 2.356194490192344928847;  // 3*pi/4
    double truncation_digits = 16.0;
    bool self_check = true;  // redo with bisected panels, compare at 1e-8
};

/// Quadrature realization of E(t)v (or of the adjoint kernel E*(t)v when
/// adjoint = true); each node solves (z^a M - A) u = M v.
std::vector<double> kernel_contour_continuous(const AssembledSystem& system, double alpha,
                                              double t, std::span<const double> v,
                                              const ContinuousContourSpec& spec = {},
                                              bool adjoint = false);

}  // namespace l1fract
