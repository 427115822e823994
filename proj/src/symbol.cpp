#include "l1fract/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace l1fract {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

using cplx = std::complex<double>;

// principal-branch power w^p for w off the closed negative real axis
cplx cpow(cplx w, double p) { return std::exp(p * std::log(w)); }
}  // namespace

std::complex<double> eval_bhat(std::complex<double> z, double alpha,
                               int truncation, double tail_tol) {
    if (z.imag() == 0.0 && z.real() <= 0.0)
        throw domain_error("eval_bhat: z on the closed negative real axis");
    if (truncation < 1) throw domain_error("eval_bhat: truncation must be >= 1");

    const int K = truncation;
    // remainder of the midpoint-corrected tail, ~ |f''| integrated past K
    const double est = (2.0 - alpha) * 2.0 * kPi *
                       std::pow(2.0 * kPi * K, alpha - 3.0) / 6.0;
    if (est > tail_tol)
        throw precision_error("eval_bhat: truncation too small for tail tolerance", est);

    cplx sum = cpow(z, alpha - 2.0);
    for (int k = 1; k <= K; ++k) {
        const cplx shift(0.0, 2.0 * kPi * k);
        sum += cpow(z + shift, alpha - 2.0) + cpow(z - shift, alpha - 2.0);
    }
    // exact integral of (z + 2*pi*i*k)^{a-2} over |k| > K+1/2
    const cplx edge(0.0, 2.0 * kPi * (K + 0.5));
    sum += (cpow(z + edge, alpha - 1.0) - cpow(z - edge, alpha - 1.0)) /
           (cplx(0.0, 2.0 * kPi) * (1.0 - alpha));
    return sum;
}

std::complex<double> eval_psi(std::complex<double> z, double alpha,
                              int truncation, double tail_tol) {
    const cplx em1 = std::exp(z) - 1.0;
    return em1 * em1 * eval_bhat(z, alpha, truncation, tail_tol);
}

SymbolReport symbol_diagnostics(double alpha, double theta_star, int n_samples) {
    if (n_samples < 8) throw domain_error("symbol_diagnostics: need n_samples >= 8");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("symbol_diagnostics: alpha must lie in (0,1)");
    if (!(theta_star > kPi / 2.0 && theta_star < kPi))
        throw domain_error("symbol_diagnostics: theta_star must lie in (pi/2, pi)");

    SymbolReport rep;
    rep.alpha = alpha;
    rep.theta_star = theta_star;

    // imaginary-axis positivity samples
    rep.min_re_psi_on_imag_axis = std::numeric_limits<double>::infinity();
    const double y0 = 0.05, y1 = kPi;
    for (int i = 0; i < n_samples; ++i) {
        const double y = y0 + (y1 - y0) * i / (n_samples - 1);
        const cplx z(0.0, y);
        const double re = (std::exp(-z) * eval_psi(z, alpha)).real();
        rep.imag_axis_y.push_back(y);
        rep.imag_axis_re.push_back(re);
        rep.min_re_psi_on_imag_axis = std::min(rep.min_re_psi_on_imag_axis, re);
    }

    // contour samples on the upper ray of Upsilon_{theta*}, |z| in [1e-4, rmax];
    // the lower ray adds nothing by conjugate symmetry
    const double rmin = 1e-4, rmax = kPi / std::sin(theta_star);
    rep.lower_constant = std::numeric_limits<double>::infinity();
    rep.upper_constant = 0.0;
    rep.max_arg = 0.0;
    const cplx dir = std::exp(cplx(0.0, theta_star));
    for (int i = 0; i < n_samples; ++i) {
        const double r = rmin * std::pow(rmax / rmin, double(i) / (n_samples - 1));
        const cplx z = r * dir;
        const cplx psi = eval_psi(z, alpha);
        const cplx w = std::exp(-z) * psi;
        rep.contour.push_back(z);
        rep.lower_constant = std::min(rep.lower_constant, std::abs(w) / std::pow(r, alpha));
        rep.upper_constant = std::max(rep.upper_constant,
                                      std::abs(psi - cpow(z, alpha)) / std::pow(r, alpha + 1.0));
        rep.max_arg = std::max(rep.max_arg, std::abs(std::arg(w)));
    }
    return rep;
}

}  // namespace l1fract
