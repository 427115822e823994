#pragma once

#include <cmath>
#include <vector>

#include "l1fract/errors.hpp"

namespace l1fract {

/// Convolution weights of the L1 scheme of order alpha: b_j = j^{1-a}/Gamma(2-a)
/// together with their second differences d_m = b_{m+1} - 2 b_m + b_{m-1},
/// which appear as the history coefficients of the time march.
///
/// b is strictly increasing with b_0 = 0, and every d_m is negative
/// (j -> j^{1-a} is concave).
struct L1Weights {
    double alpha = 0.5;
    std::vector<double> b;  // size J+1
    std::vector<double> d;  // size J-1, d[m-1] = d_m for m = 1..J-1
};

inline L1Weights make_weights(double alpha, int steps) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("make_weights: alpha must lie in (0,1)");
    if (steps < 1) throw domain_error("make_weights: need at least one step");
    L1Weights w;
    w.alpha = alpha;
    const double inv_gamma = 1.0 / std::tgamma(2.0 - alpha);
    w.b.resize(steps + 1);
    for (int j = 0; j <= steps; ++j)
        w.b[j] = std::pow(static_cast<double>(j), 1.0 - alpha) * inv_gamma;
    if (steps >= 2) {
        w.d.resize(steps - 1);
        for (int m = 1; m < steps; ++m)
            w.d[m - 1] = w.b[m + 1] - 2.0 * w.b[m] + w.b[m - 1];
    }
    return w;
}

}  // namespace l1fract
