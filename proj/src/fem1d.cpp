#include "l1fract/fem1d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace l1fract {

namespace {

// 3-point Gauss-Legendre on [-1,1]
constexpr double kGx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr double kGw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

// 5-point rule for load projection of smooth profiles
constexpr double kG5x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                            0.5384693101056831, 0.9061798459386640};
constexpr double kG5w[5] = {0.2369268850561891, 0.4786286704993665,
                            0.5688888888888889, 0.4786286704993665,
                            0.2369268850561891};

Eigen::MatrixXd to_dense(const TriDiag& t) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t.n, t.n);
    for (int i = 0; i < t.n; ++i) {
        m(i, i) = t.diag[i];
        if (i > 0) m(i, i - 1) = t.lower[i];
        if (i + 1 < t.n) m(i, i + 1) = t.upper[i];
    }
    return m;
}

TriDiag mesh_mass(const SpaceMesh1D& mesh) {
    const int n = mesh.interior_nodes();
    const double h = mesh.width();
    TriDiag m(n);
    for (int i = 0; i < n; ++i) {
        m.diag[i] = 4.0 * h / 6.0;
        if (i > 0) m.lower[i] = h / 6.0;
        if (i + 1 < n) m.upper[i] = h / 6.0;
    }
    return m;
}

}  // namespace

AssembledSystem assemble(const SpaceMesh1D& mesh, const OperatorCoefficients& coeffs) {
    const int n = mesh.interior_nodes();
    const double h = mesh.width();
    AssembledSystem sys;
    sys.mesh = mesh;
    sys.mass = mesh_mass(mesh);
    sys.op = TriDiag(n);

    // element loop; local shapes L0 = (x_r - x)/h, L1 = (x - x_l)/h
    for (int e = 0; e < mesh.cells; ++e) {
        const double xl = mesh.node(e), xr = mesh.node(e + 1);
        double k[2][2] = {{0.0, 0.0}, {0.0, 0.0}};  // k[test][trial]
        for (int q = 0; q < 3; ++q) {
            const double x = 0.5 * (xl + xr) + 0.5 * h * kGx[q];
            const double w = 0.5 * h * kGw[q];
            const double a = coeffs.diffusion(x);
            if (!(a > 0.0))
                throw domain_error("assemble: diffusion coefficient must be positive");
            const double cv = coeffs.convection(x);
            const double cr = coeffs.reaction(x);
            const double L[2] = {(xr - x) / h, (x - xl) / h};
            const double dL[2] = {-1.0 / h, 1.0 / h};
            for (int p = 0; p < 2; ++p)
                for (int r = 0; r < 2; ++r)
                    k[p][r] += w * (-a * dL[r] * dL[p] + cv * dL[r] * L[p] + cr * L[r] * L[p]);
        }
        for (int p = 0; p < 2; ++p) {
            const int gi = e + p;  // global test node
            if (gi < 1 || gi > n) continue;
            for (int r = 0; r < 2; ++r) {
                const int gj = e + r;
                if (gj < 1 || gj > n) continue;
                const int i = gi - 1, j = gj - 1;
                if (j == i) sys.op.diag[i] += k[p][r];
                else if (j == i - 1) sys.op.lower[i] += k[p][r];
                else sys.op.upper[i] += k[p][r];
            }
        }
    }

    sys.op_adjoint = sys.op.transpose();
    sys.symmetric = true;
    for (int i = 1; i < n && sys.symmetric; ++i)
        if (sys.op.lower[i] != sys.op.upper[i - 1]) sys.symmetric = false;
    return sys;
}

double check_dissipativity(const AssembledSystem& system, int trials, std::uint64_t seed) {
    const int n = system.size();
    TriDiag sym(n);
    for (int i = 0; i < n; ++i) {
        sym.diag[i] = system.op.diag[i];
        if (i > 0) sym.lower[i] = 0.5 * (system.op.lower[i] + system.op_adjoint.lower[i]);
        if (i + 1 < n) sym.upper[i] = 0.5 * (system.op.upper[i] + system.op_adjoint.upper[i]);
    }

    auto rayleigh = [&](const std::vector<double>& v) {
        const double num = inner(v, sym.apply(v));
        const double den = mass_inner(system.mass, v, v);
        return num / den;
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double margin = -std::numeric_limits<double>::infinity();
    std::vector<double> best(n, 1.0);
    for (int t = 0; t < std::max(1, trials); ++t) {
        std::vector<double> v(n);
        for (auto& x : v) x = gauss(rng);
        const double q = rayleigh(v);
        if (q > margin) {
            margin = q;
            best = v;
        }
    }

    // polish toward the extremal mode: power iteration on M^{-1}(sym + s M)
    double shift = 1.0;
    for (int i = 0; i < n; ++i)
        shift = std::max(shift, 1.0 + std::abs(sym.diag[i]) / system.mass.diag[i]);
    const TriDiagLU<double> mass_lu(system.mass);
    std::vector<double> v = best;
    for (int it = 0; it < 500; ++it) {
        auto w = sym.apply(v);
        const auto mv = system.mass.apply(v);
        for (int i = 0; i < n; ++i) w[i] += shift * mv[i];
        mass_lu.solve_in_place(w);
        double norm = std::sqrt(inner(w, w));
        if (!(norm > 0.0)) break;
        for (auto& x : w) x /= norm;
        v = w;
    }
    margin = std::max(margin, rayleigh(v));
    return margin;
}

SpectralData generalized_eigendecomposition(const AssembledSystem& system) {
    if (!system.symmetric)
        throw domain_error(
            "generalized_eigendecomposition: operator must be symmetric (no convection)");
    const int n = system.size();
    Eigen::MatrixXd negop = -to_dense(system.op);
    Eigen::MatrixXd mass = to_dense(system.mass);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(negop, mass);
    if (solver.info() != Eigen::Success)
        throw solver_error("generalized_eigendecomposition: eigensolver failed");

    SpectralData sd;
    sd.n = n;
    sd.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    sd.modes.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            sd.modes[static_cast<size_t>(i) * n + k] = solver.eigenvectors()(k, i);
    return sd;
}

std::vector<double> project_load(const SpaceMesh1D& mesh,
                                 const std::function<double(double)>& g) {
    const int n = mesh.interior_nodes();
    const double h = mesh.width();
    std::vector<double> load(n, 0.0);
    for (int e = 0; e < mesh.cells; ++e) {
        const double xl = mesh.node(e), xr = mesh.node(e + 1);
        for (int q = 0; q < 5; ++q) {
            const double x = 0.5 * (xl + xr) + 0.5 * h * kG5x[q];
            const double w = 0.5 * h * kG5w[q];
            const double gv = g(x);
            if (e >= 1) load[e - 1] += w * gv * (xr - x) / h;
            if (e + 1 <= n) load[e] += w * gv * (x - xl) / h;
        }
    }
    TriDiagLU<double> lu(mesh_mass(mesh));
    lu.solve_in_place(load);
    return load;
}

std::vector<double> project_load(const SpaceMesh1D& mesh, PowerProfile profile) {
    const double p = profile.exponent;
    if (!(p > -1.0)) throw domain_error("project_load: x^p not integrable for p <= -1");
    if (mesh.left < 0.0)
        throw domain_error("project_load: power profile needs a mesh on [0, L]");
    const int n = mesh.interior_nodes();
    const double h = mesh.width();
    auto F1 = [p](double x) { return std::pow(x, p + 1.0) / (p + 1.0); };
    auto F2 = [p](double x) { return std::pow(x, p + 2.0) / (p + 2.0); };
    std::vector<double> load(n);
    for (int i = 1; i <= n; ++i) {
        const double xm = mesh.node(i - 1), xi = mesh.node(i), xp = mesh.node(i + 1);
        const double left = (F2(xi) - F2(xm) - xm * (F1(xi) - F1(xm))) / h;
        const double right = (xp * (F1(xp) - F1(xi)) - (F2(xp) - F2(xi))) / h;
        load[i - 1] = left + right;
    }
    TriDiagLU<double> lu(mesh_mass(mesh));
    lu.solve_in_place(load);
    return load;
}

}  // namespace l1fract
