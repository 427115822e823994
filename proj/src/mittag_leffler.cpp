#include "l1fract/mittag_leffler.hpp"

#include <quadmath.h>

#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace l1fract {

namespace detail {

namespace {

// per-(alpha,beta) table of Gamma(alpha k + beta) ratios so that series
// terms cost one quad multiply each; the oracle calls this millions of
// times with a handful of (alpha,beta) pairs
struct RatioTable {
    std::vector<__float128> ratio;  // ratio[k] = Gamma(a k + b)/Gamma(a(k+1) + b)

    const __float128& get(double alpha, double beta, int k) {
        while (static_cast<int>(ratio.size()) <= k) {
            // the argument must be formed in quad: double rounding of
            // alpha*m is erratic in m and wrecks the alternating
            // cancellation at the 1e-14 level
            const int m = static_cast<int>(ratio.size());
            const __float128 aq = alpha, bq = beta;
            const __float128 num = lgammaq(aq * m + bq);
            const __float128 den = lgammaq(aq * (m + 1) + bq);
            ratio.push_back(expq(num - den));
        }
        return ratio[k];
    }
};

thread_local std::map<std::pair<double, double>, RatioTable> g_tables;

}  // namespace

double ml_series(double alpha, double beta, double x, int cap) {
    auto& table = g_tables[{alpha, beta}];
    __float128 sum = __float128(0);
    __float128 term = expq(-lgammaq(beta));  // k = 0
    __float128 peak = __float128(0);
    const __float128 xq = x;
    for (int k = 0; k < cap; ++k) {
        sum += term;
        const __float128 mag = fabsq(term);
        if (mag > peak) peak = mag;
        if (k >= 8 && mag < peak && mag < __float128(1e-22) * (fabsq(sum) + __float128(1e-30)))
            return static_cast<double>(sum);
        term = term * xq * table.get(alpha, beta, k);
    }
    throw precision_error("mittag_leffler: series cap reached before convergence",
                          static_cast<double>(fabsq(term)));
}

double ml_asymptotic(double alpha, double beta, double x, int cap,
                     double* err_estimate) {
    double sum = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    double est = 0.0;
    for (int k = 1; k <= cap; ++k) {
        const double arg = beta - alpha * k;
        if (arg < 0.5 && std::abs(arg - std::round(arg)) < 1e-9) continue;  // Gamma pole
        const double term = -std::pow(x, -k) / std::tgamma(arg);
        if (std::abs(term) >= prev) {  // divergent tail reached
            est = std::abs(term);
            if (err_estimate) *err_estimate = est;
            return sum;
        }
        sum += term;
        prev = std::abs(term);
        est = prev;
    }
    if (err_estimate) *err_estimate = est;
    return sum;
}

double ml_crossover(double alpha, const MittagLefflerParams& params) {
    return params.crossover > 0.0 ? params.crossover : std::pow(41.6, alpha);
}

}  // namespace detail

double mittag_leffler(double alpha, double beta, double x,
                      const MittagLefflerParams& params) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw domain_error("mittag_leffler: alpha must lie in (0,1]");
    if (!(beta > 0.0)) throw domain_error("mittag_leffler: beta must be positive");
    if (x > 5.0) throw domain_error("mittag_leffler: x must be <= 5");
    if (params.series_cap < 50)
        throw domain_error("mittag_leffler: series cap must be >= 50");
    if (params.asym_cap > 30 || params.asym_cap < 4)
        throw domain_error("mittag_leffler: asymptotic cap must lie in [4, 30]");

    if (alpha == 1.0) {
        if (beta == 1.0) return std::exp(x);
        if (beta == 2.0) return x == 0.0 ? 1.0 : std::expm1(x) / x;
    }

    const double rc = detail::ml_crossover(alpha, params);
    if (x >= -rc) return detail::ml_series(alpha, beta, x, params.series_cap);

    double est = 0.0;
    const double value = detail::ml_asymptotic(alpha, beta, x, params.asym_cap, &est);
    if (est > 1e-10 * (std::abs(value) + 1e-300))
        throw precision_error("mittag_leffler: asymptotic remainder above 1e-10", est);
    return value;
}

}  // namespace l1fract
