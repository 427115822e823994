#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "l1fract/errors.hpp"

namespace l1fract {

/// Tridiagonal matrix, row-oriented storage: lower[i] = A(i,i-1),
/// diag[i] = A(i,i), upper[i] = A(i,i+1). lower[0] and upper[n-1] unused.
template <typename T>
struct TriDiagT {
    int n = 0;
    std::vector<T> lower, diag, upper;

    TriDiagT() = default;
    explicit TriDiagT(int size) : n(size), lower(size, T{}), diag(size, T{}), upper(size, T{}) {}

    std::vector<T> apply(std::span<const T> x) const {
        std::vector<T> y(n);
        for (int i = 0; i < n; ++i) {
            T s = diag[i] * x[i];
            if (i > 0) s += lower[i] * x[i - 1];
            if (i + 1 < n) s += upper[i] * x[i + 1];
            y[i] = s;
        }
        return y;
    }

    TriDiagT transpose() const {
        TriDiagT t(n);
        t.diag = diag;
        for (int i = 0; i + 1 < n; ++i) t.upper[i] = lower[i + 1];
        for (int i = 1; i < n; ++i) t.lower[i] = upper[i - 1];
        return t;
    }
};

using TriDiag = TriDiagT<double>;
using TriDiagC = TriDiagT<std::complex<double>>;

/// c0*A + c1*B entrywise, with scalar promotion (used for the complex
/// resolvent pencils lambda*M - A).
template <typename S, typename T>
TriDiagT<S> combine(S c0, const TriDiagT<T>& A, S c1, const TriDiagT<T>& B) {
    TriDiagT<S> r(A.n);
    for (int i = 0; i < A.n; ++i) {
        r.lower[i] = c0 * A.lower[i] + c1 * B.lower[i];
        r.diag[i] = c0 * A.diag[i] + c1 * B.diag[i];
        r.upper[i] = c0 * A.upper[i] + c1 * B.upper[i];
    }
    return r;
}

/// LU factorization of a tridiagonal matrix with partial pivoting
/// (one superdiagonal of fill-in). Factor once, solve many times.
template <typename T>
class TriDiagLU {
public:
    explicit TriDiagLU(const TriDiagT<T>& A)
        : n_(A.n), d_(A.diag), du_(n_ ? n_ - 1 : 0), du2_(n_ > 1 ? n_ - 2 : 0),
          dl_(n_ ? n_ - 1 : 0), pivot_(n_ ? n_ - 1 : 0, 0) {
        for (int i = 0; i + 1 < n_; ++i) du_[i] = A.upper[i];
        for (int i = 0; i + 1 < n_; ++i) dl_[i] = A.lower[i + 1];
        for (int i = 0; i + 1 < n_; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                if (std::abs(d_[i]) == 0.0)
                    throw solver_error("TriDiagLU: singular pivot");
                const T f = dl_[i] / d_[i];
                dl_[i] = f;
                d_[i + 1] -= f * du_[i];
                if (i + 2 < n_) du2_[i] = T{};
            } else {
                const T f = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = f;
                const T tmp = d_[i + 1];
                d_[i + 1] = du_[i] - f * tmp;
                if (i + 2 < n_) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -f * du_[i + 1];
                }
                du_[i] = tmp;
                pivot_[i] = 1;
            }
        }
        if (n_ > 0 && std::abs(d_[n_ - 1]) == 0.0)
            throw solver_error("TriDiagLU: singular matrix");
    }

    void solve_in_place(std::vector<T>& b) const {
        for (int i = 0; i + 1 < n_; ++i) {
            if (pivot_[i] == 0) {
                b[i + 1] -= dl_[i] * b[i];
            } else {
                const T tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl_[i] * b[i + 1];
            }
        }
        b[n_ - 1] /= d_[n_ - 1];
        if (n_ > 1) b[n_ - 2] = (b[n_ - 2] - du_[n_ - 2] * b[n_ - 1]) / d_[n_ - 2];
        for (int i = n_ - 3; i >= 0; --i)
            b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }

    std::vector<T> solve(std::vector<T> b) const {
        solve_in_place(b);
        return b;
    }

private:
    int n_;
    std::vector<T> d_, du_, du2_, dl_;
    std::vector<int> pivot_;
};

inline double inner(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

/// x^T M y for the (symmetric) mass matrix.
inline double mass_inner(const TriDiag& mass, std::span<const double> x,
                         std::span<const double> y) {
    const auto my = mass.apply(y);
    return inner(x, my);
}

inline double mass_norm(const TriDiag& mass, std::span<const double> x) {
    return std::sqrt(std::max(0.0, mass_inner(mass, x, x)));
}

}  // namespace l1fract
