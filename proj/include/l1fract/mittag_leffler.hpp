#pragma once

#include "l1fract/errors.hpp"

namespace l1fract {

/// Evaluation policy for E_{alpha,beta} on the real axis.
///
/// crossover = 0 selects the automatic per-alpha handoff radius
/// 41.6^alpha, sized so that the truncated asymptotic expansion already
/// delivers ~1e-12 relative error at the handoff while the Taylor series
/// (run in quad precision to absorb the cancellation, which grows like
/// exp(|x|^{1/alpha})) still has ~18 spare digits there. A fixed radius
/// like 10 cannot serve all alpha: the series explodes for small alpha
/// long before 10, and the asymptotic side is not yet accurate at 10 for
/// alpha near 1.
struct MittagLefflerParams {
    double crossover = 0.0;  // 0 = automatic 41.6^alpha
    int series_cap = 2000;   // must be >= 50
    int asym_cap = 30;       // must be <= 30
};

/// E_{alpha,beta}(x) for 0 < alpha <= 1, beta > 0, x <= 5.
/// Taylor series (quad precision) for |x| below the crossover, the
/// optimally truncated asymptotic expansion -sum x^{-k}/Gamma(beta-alpha k)
/// beyond it. Throws precision_error if the asymptotic remainder estimate
/// exceeds 1e-10 relative.
double mittag_leffler(double alpha, double beta, double x,
                      const MittagLefflerParams& params = {});

namespace detail {
/// Branch internals, exposed for the overlap-verification tests.
double ml_series(double alpha, double beta, double x, int cap);
double ml_asymptotic(double alpha, double beta, double x, int cap,
                     double* err_estimate = nullptr);
double ml_crossover(double alpha, const MittagLefflerParams& params);
}  // namespace detail

}  // namespace l1fract
