#include <doctest.h>

#include <cmath>

#include "l1fract/l1_weights.hpp"

using namespace l1fract;

TEST_CASE("weight endpoints") {
    for (double alpha : {0.2, 0.5, 0.8}) {
        auto w = make_weights(alpha, 6);
        CHECK(w.b[0] == 0.0);
        CHECK(w.b[1] == doctest::Approx(1.0 / std::tgamma(2.0 - alpha)).epsilon(1e-14));
    }
}

TEST_CASE("frozen values at alpha = 0.5") {
    auto w = make_weights(0.5, 4);
    const double expect[5] = {0.0, 1.1283792, 1.5957691, 1.9544100, 2.2567583};
    for (int j = 0; j <= 4; ++j)
        CHECK(w.b[j] == doctest::Approx(expect[j]).epsilon(1e-6));
}

TEST_CASE("monotonicity, concavity, telescoping") {
    for (double alpha : {0.01, 0.5, 0.99}) {
        const int J = 1000;
        auto w = make_weights(alpha, J);
        for (int j = 0; j < J; ++j) CHECK(w.b[j] < w.b[j + 1]);
        for (int m = 1; m < J; ++m) CHECK(w.d[m - 1] < 0.0);
        // b_1 + sum_{m=1}^{k-1} d_m == b_k - b_{k-1}
        double acc = w.b[1];
        for (int k = 2; k <= J; ++k) {
            acc += w.d[k - 2];
            CHECK(std::abs(acc - (w.b[k] - w.b[k - 1])) <= 1e-13 * w.b[k]);
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(make_weights(0.0, 4), domain_error);
    CHECK_THROWS_AS(make_weights(1.0, 4), domain_error);
    CHECK_THROWS_AS(make_weights(-0.3, 4), domain_error);
    CHECK_THROWS_AS(make_weights(0.5, 0), domain_error);
}
