#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracplap/special.hpp"

using fracplap::gamma_fn;

TEST_CASE("gamma at landmark points") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-14));
}

TEST_CASE("gamma matches the standard library on (0, 10]") {
    // std::tgamma is the independent reference here
    double worst = 0.0;
    for (int k = 1; k <= 1000; ++k) {
        const double x = k * 0.01;
        const double rel = std::abs(gamma_fn(x) - std::tgamma(x)) / std::tgamma(x);
        worst = std::max(worst, rel);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("gamma rejects nonpositive arguments") {
    CHECK_THROWS_AS(gamma_fn(0.0), std::invalid_argument);
    CHECK_THROWS_AS(gamma_fn(-1.5), std::invalid_argument);
}
