#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "l1fract/errors.hpp"
#include "l1fract/tridiag.hpp"

namespace l1fract {

/// Uniform 1-D mesh with P1 elements and homogeneous Dirichlet ends;
/// unknowns live on the cells-1 interior nodes.
struct SpaceMesh1D {
    double left = 0.0, right = 1.0;
    int cells = 2;

    SpaceMesh1D() = default;
    SpaceMesh1D(double xl, double xr, int n) : left(xl), right(xr), cells(n) {
        if (!(xl < xr)) throw domain_error("SpaceMesh1D: left endpoint must be < right");
        if (n < 2) throw domain_error("SpaceMesh1D: need at least 2 cells");
    }

    double width() const { return (right - left) / cells; }
    double node(int i) const { return left + i * (right - left) / cells; }
    int interior_nodes() const { return cells - 1; }
};

/// Coefficients of Av = (a v')' + conv v' + c v. The paper writes the
/// convection field as b; renamed here to avoid clashing with the L1
/// weights b_j.
struct OperatorCoefficients {
    std::function<double(double)> diffusion;
    std::function<double(double)> convection;
    std::function<double(double)> reaction;

    static OperatorCoefficients laplacian() { return constant(1.0, 0.0, 0.0); }
    static OperatorCoefficients constant(double a, double conv, double c) {
        return {[a](double) { return a; }, [conv](double) { return conv; },
                [c](double) { return c; }};
    }
};

/// P1 Galerkin matrices with Dirichlet elimination. op_adjoint is the
/// transpose of op, so the discrete duality identity holds to roundoff
/// regardless of quadrature error.
struct AssembledSystem {
    SpaceMesh1D mesh;
    TriDiag mass;
    TriDiag op;
    TriDiag op_adjoint;
    bool symmetric = false;

    int size() const { return mass.n; }
};

/// Assemble mass (exact) and operator (3-point Gauss per element) matrices.
/// Throws domain_error when the diffusion coefficient is nonpositive at a
/// quadrature point.
AssembledSystem assemble(const SpaceMesh1D& mesh, const OperatorCoefficients& coeffs);

/// Largest Rayleigh quotient v'sym(op)v / v'Mv found over `trials` random
/// vectors plus a generalized power iteration started from the best one.
/// A nonpositive margin certifies discrete dissipativity.
double check_dissipativity(const AssembledSystem& system, int trials,
                           std::uint64_t seed = 0x9e3779b97f4a7c15ull);

/// Eigenpairs of (-op) phi = mu M phi for the symmetric case,
/// M-orthonormal modes in ascending order of mu.
struct SpectralData {
    int n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> modes;  // modes[i*n + k], mode i, node k

    std::span<const double> mode(int i) const {
        return {modes.data() + static_cast<size_t>(i) * n, static_cast<size_t>(n)};
    }
};

/// Dense generalized eigendecomposition; rejects nonsymmetric op.
SpectralData generalized_eigendecomposition(const AssembledSystem& system);

/// Marker for profiles g(x) = x^p whose load moments are evaluated in
/// closed form (the quadrature path would lose accuracy for p < 0).
struct PowerProfile {
    double exponent;
};

/// L2 projection onto the P1 space: solves M g_h = (g, phi_i).
std::vector<double> project_load(const SpaceMesh1D& mesh,
                                 const std::function<double(double)>& g);
std::vector<double> project_load(const SpaceMesh1D& mesh, PowerProfile profile);

}  // namespace l1fract
