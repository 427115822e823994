#include "l1fract/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace l1fract {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using cplx = std::complex<double>;

constexpr double kQx[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kQw[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

std::vector<double> modal_coefficients(const SpectralData& spectral, const TriDiag& mass,
                                       std::span<const double> v) {
    const std::vector<double> vv(v.begin(), v.end());
    const auto mv = mass.apply(vv);
    std::vector<double> c(spectral.n);
    for (int i = 0; i < spectral.n; ++i) {
        const auto phi = spectral.mode(i);
        double s = 0.0;
        for (int k = 0; k < spectral.n; ++k) s += phi[k] * mv[k];
        c[i] = s;
    }
    return c;
}

std::vector<double> modal_synthesis(const SpectralData& spectral,
                                    const std::vector<double>& coeff) {
    std::vector<double> y(spectral.n, 0.0);
    // fixed ascending-mu order keeps the summation deterministic
    for (int i = 0; i < spectral.n; ++i) {
        const auto phi = spectral.mode(i);
        for (int k = 0; k < spectral.n; ++k) y[k] += coeff[i] * phi[k];
    }
    return y;
}

std::vector<double> panel_edges(double a, double b, double phase_rate, double grow) {
    std::vector<double> edges{a};
    double x = a;
    const double cap = phase_rate > 0.0 ? 1.5 / phase_rate : b;
    while (x < b) {
        double nxt = std::min({b, x * grow, x + cap});
        if (nxt <= x) nxt = b;
        edges.push_back(nxt);
        x = nxt;
    }
    return edges;
}

std::vector<double> contour_once(const AssembledSystem& system, double alpha, double t,
                                 std::span<const double> v,
                                 const ContinuousContourSpec& spec, bool adjoint,
                                 double grow) {
    const int n = system.size();
    const double omega = spec.angle;
    const double eps = std::min(1.0, 1.0 / t);
    const double rmax = spec.truncation_digits * std::log(10.0) /
                        (t * std::abs(std::cos(omega)));
    const TriDiag& op = adjoint ? system.op_adjoint : system.op;

    const std::vector<double> vv(v.begin(), v.end());
    const auto mv_real = system.mass.apply(vv);
    const std::vector<cplx> mv(mv_real.begin(), mv_real.end());

    auto resolvent = [&](cplx z) {
        const cplx za = std::pow(z, alpha);
        TriDiagC pencil = combine(za, system.mass, cplx(-1.0, 0.0), op);
        TriDiagLU<cplx> lu(pencil);
        auto u = lu.solve(mv);
        const cplx phase = std::exp(t * z);
        for (auto& x : u) x *= phase;
        return u;
    };

    std::vector<cplx> acc(n, cplx(0.0, 0.0));
    const cplx dir = std::exp(cplx(0.0, omega));
    const auto edges = panel_edges(eps, rmax, t * std::abs(std::sin(omega)), grow);
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        for (int q = 0; q < 16; ++q) {
            const double r = 0.5 * (edges[p] + edges[p + 1]) +
                             0.5 * (edges[p + 1] - edges[p]) * kQx[q];
            const double w = 0.5 * (edges[p + 1] - edges[p]) * kQw[q];
            const auto term = resolvent(r * dir);
            for (int i = 0; i < n; ++i) acc[i] += w * term[i] * dir;
        }
    }
    const int arc_panels = grow > 1.5 ? 3 : 6;
    for (int s = 0; s < arc_panels; ++s) {
        const double p0 = omega * s / arc_panels, p1 = omega * (s + 1) / arc_panels;
        for (int q = 0; q < 16; ++q) {
            const double phi = 0.5 * (p0 + p1) + 0.5 * (p1 - p0) * kQx[q];
            const double w = 0.5 * (p1 - p0) * kQw[q];
            const cplx z = eps * std::exp(cplx(0.0, phi));
            const auto term = resolvent(z);
            for (int i = 0; i < n; ++i) acc[i] += w * term[i] * cplx(0.0, 1.0) * z;
        }
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = acc[i].imag() / kPi;
    return out;
}

}  // namespace

std::vector<double> semidiscrete_delta(const SpectralData& spectral, const TriDiag& mass,
                                       double alpha, std::span<const double> v, double t) {
    if (!(t > 0.0))
        throw domain_error("semidiscrete_delta: kernel is singular at t = 0");
    auto c = modal_coefficients(spectral, mass, v);
    const double ta = std::pow(t, alpha);
    for (int i = 0; i < spectral.n; ++i)
        c[i] *= std::pow(t, alpha - 1.0) *
                mittag_leffler(alpha, alpha, -spectral.eigenvalues[i] * ta);
    return modal_synthesis(spectral, c);
}

std::vector<double> semidiscrete_constant_source(const SpectralData& spectral,
                                                 const TriDiag& mass, double alpha,
                                                 std::span<const double> g, double t) {
    if (t < 0.0) throw domain_error("semidiscrete_constant_source: negative time");
    if (t == 0.0) return std::vector<double>(spectral.n, 0.0);
    auto c = modal_coefficients(spectral, mass, g);
    const double ta = std::pow(t, alpha);
    for (int i = 0; i < spectral.n; ++i)
        c[i] *= ta * mittag_leffler(alpha, alpha + 1.0, -spectral.eigenvalues[i] * ta);
    return modal_synthesis(spectral, c);
}

std::vector<double> kernel_contour_continuous(const AssembledSystem& system, double alpha,
                                              double t, std::span<const double> v,
                                              const ContinuousContourSpec& spec,
                                              bool adjoint) {
    if (!(t > 0.0)) throw domain_error("kernel_contour_continuous: need t > 0");
    if (!(spec.angle > kPi / 2.0 && spec.angle < kPi))
        throw domain_error("kernel_contour_continuous: angle outside (pi/2, pi)");

    auto coarse = contour_once(system, alpha, t, v, spec, adjoint, 2.0);
    if (!spec.self_check) return coarse;
    auto fine = contour_once(system, alpha, t, v, spec, adjoint, std::sqrt(2.0));
    double diff = 0.0, scale = 1.0;
    for (size_t i = 0; i < coarse.size(); ++i) {
        diff = std::max(diff, std::abs(coarse[i] - fine[i]));
        scale = std::max(scale, std::abs(fine[i]));
    }
    if (diff > 1e-8 * scale)
        throw precision_error("kernel_contour_continuous: self-convergence check failed",
                              diff / scale);
    return fine;
}

}  // namespace l1fract
