#include "l1fract/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "l1fract/symbol.hpp"

namespace l1fract {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using cplx = std::complex<double>;

void check_dims(const AssembledSystem& system, const L1Weights& weights,
                const SourceSpec& source, const TimeGrid& grid) {
    const size_t n = static_cast<size_t>(system.size());
    if (static_cast<int>(weights.b.size()) != grid.steps + 1)
        throw domain_error("solve: weights were built for a different step count");
    if (source.kind == SourceSpec::Kind::interval_averages) {
        if (static_cast<int>(source.averages.size()) != grid.steps)
            throw domain_error("solve: need one interval average per step");
        for (const auto& g : source.averages)
            if (g.size() != n) throw domain_error("solve: source dimension mismatch");
    } else {
        if (source.impulse.size() != n)
            throw domain_error("solve: impulse dimension mismatch");
    }
}

// 16-point Gauss-Legendre on [-1,1]
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

// panel edges on [a,b]: geometric doubling from a, capped so the phase
// j*r*sin(theta) changes by at most ~1.5 per panel, at least min_panels
std::vector<double> ray_panels(double a, double b, double phase_rate, int min_panels) {
    std::vector<double> edges{a};
    double x = a;
    const double cap = phase_rate > 0.0 ? 1.5 / phase_rate : b;
    while (x < b) {
        double nxt = std::min({b, x * 2.0, x + cap});
        if (nxt <= x) nxt = b;
        edges.push_back(nxt);
        x = nxt;
    }
    while (static_cast<int>(edges.size()) - 1 < min_panels) {
        // bisect the widest panel
        size_t widest = 0;
        for (size_t i = 1; i + 1 < edges.size(); ++i)
            if (edges[i + 1] - edges[i] > edges[widest + 1] - edges[widest]) widest = i;
        edges.insert(edges.begin() + widest + 1,
                     0.5 * (edges[widest] + edges[widest + 1]));
    }
    return edges;
}

}  // namespace

SpaceTimeField solve_forward(const AssembledSystem& system, const L1Weights& weights,
                             const SourceSpec& source, const TimeGrid& grid) {
    if (source.kind == SourceSpec::Kind::delta_at_final)
        throw domain_error("solve_forward: delta at t=T is an adjoint-side source");
    check_dims(system, weights, source, grid);

    const int n = system.size();
    const int J = grid.steps;
    const double tau = grid.tau();
    const double ta = std::pow(tau, weights.alpha);

    const TriDiag step_matrix = combine(weights.b[1], system.mass, -ta, system.op);
    const TriDiagLU<double> lu(step_matrix);

    SpaceTimeField out;
    out.grid = grid;
    out.values.assign(J, std::vector<double>(n, 0.0));
    std::vector<double> combo(n);

    for (int k = 1; k <= J; ++k) {
        // combo = tau^a gbar_k - sum_{j=1}^{k-1} d_{k-j} W_j
        std::fill(combo.begin(), combo.end(), 0.0);
        if (source.kind == SourceSpec::Kind::delta_at_zero) {
            if (k == 1)
                for (int i = 0; i < n; ++i) combo[i] = ta / tau * source.impulse[i];
        } else {
            const auto& gk = source.averages[k - 1];
            for (int i = 0; i < n; ++i) combo[i] = ta * gk[i];
        }
        for (int j = 1; j < k; ++j) {
            const double dkj = weights.d[k - j - 1];
            const auto& wj = out.values[j - 1];
            for (int i = 0; i < n; ++i) combo[i] -= dkj * wj[i];
        }
        auto rhs = system.mass.apply(combo);
        lu.solve_in_place(rhs);
        out.values[k - 1] = std::move(rhs);
    }
    return out;
}

SpaceTimeField solve_adjoint(const AssembledSystem& system, const L1Weights& weights,
                             const SourceSpec& source, const TimeGrid& grid) {
    if (source.kind == SourceSpec::Kind::delta_at_zero)
        throw domain_error("solve_adjoint: delta at t=0 is a forward-side source");
    check_dims(system, weights, source, grid);

    const int n = system.size();
    const int J = grid.steps;
    const double tau = grid.tau();
    const double ta = std::pow(tau, weights.alpha);

    const TriDiag step_matrix = combine(weights.b[1], system.mass, -ta, system.op_adjoint);
    const TriDiagLU<double> lu(step_matrix);

    SpaceTimeField out;
    out.grid = grid;
    out.values.assign(J, std::vector<double>(n, 0.0));
    std::vector<double> combo(n);

    for (int k = J; k >= 1; --k) {
        // combo = tau^a gbar_k - sum_{j=k+1}^{J} d_{j-k} W_j
        std::fill(combo.begin(), combo.end(), 0.0);
        if (source.kind == SourceSpec::Kind::delta_at_final) {
            if (k == J)
                for (int i = 0; i < n; ++i) combo[i] = ta / tau * source.impulse[i];
        } else {
            const auto& gk = source.averages[k - 1];
            for (int i = 0; i < n; ++i) combo[i] = ta * gk[i];
        }
        for (int j = k + 1; j <= J; ++j) {
            const double djk = weights.d[j - k - 1];
            const auto& wj = out.values[j - 1];
            for (int i = 0; i < n; ++i) combo[i] -= djk * wj[i];
        }
        auto rhs = system.mass.apply(combo);
        lu.solve_in_place(rhs);
        out.values[k - 1] = std::move(rhs);
    }
    return out;
}

double spacetime_inner(const AssembledSystem& system,
                       const std::vector<std::vector<double>>& F,
                       const SpaceTimeField& G) {
    if (F.size() != G.values.size())
        throw domain_error("spacetime_inner: fields live on different grids");
    const double tau = G.grid.tau();
    double s = 0.0;
    for (size_t k = 0; k < F.size(); ++k) {
        if (F[k].size() != G.values[k].size())
            throw domain_error("spacetime_inner: dimension mismatch");
        s += mass_inner(system.mass, F[k], G.values[k]);
    }
    return tau * s;
}

double spacetime_inner(const AssembledSystem& system, const SpaceTimeField& F,
                       const SpaceTimeField& G) {
    if (F.grid.steps != G.grid.steps ||
        F.grid.final_time != G.grid.final_time)
        throw domain_error("spacetime_inner: fields live on different grids");
    return spacetime_inner(system, F.values, G);
}

std::vector<double> discrete_kernel_apply(const AssembledSystem& system, double alpha,
                                          double tau, int step,
                                          std::span<const double> v,
                                          const ContourSpec& contour) {
    if (step < 0) throw domain_error("discrete_kernel_apply: step must be >= 0");
    if (contour.nodes_per_arm < 8)
        throw domain_error("discrete_kernel_apply: need at least 8 nodes per arm");
    if (!(contour.origin_radius > 0.0 && contour.origin_radius < kPi / 4.0))
        throw domain_error("discrete_kernel_apply: origin radius outside (0, pi/4)");
    const double theta = contour.angle;
    if (!(theta > kPi / 2.0 && theta < kPi))
        throw domain_error("discrete_kernel_apply: contour angle outside (pi/2, pi)");

    const int n = system.size();
    const double ta = std::pow(tau, alpha);
    const std::vector<double> vv(v.begin(), v.end());
    const auto mv_real = system.mass.apply(vv);
    std::vector<cplx> mv(mv_real.begin(), mv_real.end());

    // symbol truncation sized for ~1e-10 tails
    const int K = static_cast<int>(std::ceil(
        std::pow((2.0 - alpha) * 2.0 * kPi / (6.0 * 1e-10), 1.0 / (3.0 - alpha)) /
        (2.0 * kPi)));

    auto resolvent_term = [&](cplx z) -> std::vector<cplx> {
        const cplx lam = std::exp(-z) * eval_psi(z, alpha, std::max(K, 64), 1e-8) / ta;
        TriDiagC pencil = combine(lam, system.mass, cplx(-1.0, 0.0), system.op);
        try {
            TriDiagLU<cplx> lu(pencil);
            auto u = lu.solve(mv);
            const cplx phase = std::exp(double(step) * z);
            for (auto& x : u) x *= phase;
            return u;
        } catch (const solver_error&) {
            throw solver_error(
                "discrete_kernel_apply: resolvent singular on the contour; "
                "try a different angle or origin radius");
        }
    };

    std::vector<cplx> acc(n, cplx(0.0, 0.0));
    // upper ray, r in [eps, pi/sin(theta)]
    const double eps = contour.origin_radius;
    const double rmax = kPi / std::sin(theta);
    const auto edges = ray_panels(eps, rmax, std::max(step, 1) * std::sin(theta),
                                  std::max(1, contour.nodes_per_arm / 16));
    const cplx dir = std::exp(cplx(0.0, theta));
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1];
        for (int q = 0; q < 16; ++q) {
            const double r = 0.5 * (a + b) + 0.5 * (b - a) * kQx[q];
            const double w = 0.5 * (b - a) * kQw[q];
            const auto term = resolvent_term(r * dir);
            for (int i = 0; i < n; ++i) acc[i] += w * term[i] * dir;
        }
    }
    // origin arc, phi in [0, theta], three panels
    for (int s = 0; s < 3; ++s) {
        const double p0 = theta * s / 3.0, p1 = theta * (s + 1) / 3.0;
        for (int q = 0; q < 16; ++q) {
            const double phi = 0.5 * (p0 + p1) + 0.5 * (p1 - p0) * kQx[q];
            const double w = 0.5 * (p1 - p0) * kQw[q];
            const cplx z = eps * std::exp(cplx(0.0, phi));
            const auto term = resolvent_term(z);
            for (int i = 0; i < n; ++i) acc[i] += w * term[i] * cplx(0.0, 1.0) * z;
        }
    }
    // lower half contributes the conjugate: (1/2 pi i)(I - conj I) = Im(I)/pi
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = acc[i].imag() / kPi;
    return out;
}

SourceSpec as_interval_averages(const std::function<double(double, double)>& g,
                                const TimeGrid& grid, const SpaceMesh1D& mesh) {
    const double tau = grid.tau();
    // 2-point Gauss in time per interval
    const double off = 0.5 / std::sqrt(3.0);
    std::vector<std::vector<double>> avg(grid.steps);
    for (int k = 1; k <= grid.steps; ++k) {
        const double tm = 0.5 * (grid.node(k - 1) + grid.node(k));
        const double t1 = tm - off * tau, t2 = tm + off * tau;
        auto p = project_load(mesh, [&](double x) { return 0.5 * (g(t1, x) + g(t2, x)); });
        avg[k - 1] = std::move(p);
    }
    return SourceSpec::intervals(std::move(avg));
}

SourceSpec as_interval_averages(std::span<const double> profile, const TimeGrid& grid) {
    std::vector<std::vector<double>> avg(
        grid.steps, std::vector<double>(profile.begin(), profile.end()));
    return SourceSpec::intervals(std::move(avg));
}

}  // namespace l1fract
