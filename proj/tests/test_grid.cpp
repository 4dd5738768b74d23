#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracplap/grid.hpp"

using namespace fracplap;

TEST_CASE("make_grid basics") {
    const Grid g = make_grid(1.0, 10);
    CHECK(g.h == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(g.node(5) == doctest::Approx(0.5).epsilon(1e-15));

    CHECK(make_grid(2.0, 8).h == doctest::Approx(0.25).epsilon(1e-15));

    CHECK_THROWS_AS(make_grid(1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 16), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 16), std::invalid_argument);
}

TEST_CASE("grid function boundary invariant") {
    const Grid g = make_grid(1.0, 8);
    std::vector<double> bad(9, 1.0); // constant interior AND boundary
    CHECK_THROWS_AS(GridFunction(g, bad), std::invalid_argument);

    bad.front() = 0.0;
    CHECK_THROWS_AS(GridFunction(g, bad), std::invalid_argument); // still bad at t = T

    bad.back() = 0.0;
    CHECK_NOTHROW(GridFunction(g, bad));

    std::vector<double> nonfinite(9, 0.0);
    nonfinite[4] = std::nan("");
    CHECK_THROWS_AS(GridFunction(g, nonfinite), std::invalid_argument);
}

TEST_CASE("lp_norm examples") {
    const Grid g = make_grid(1.0, 256);
    CHECK(lp_norm(GridFunction::zero(g), 2.0) == 0.0);

    // int_0^1 sin^2(pi t) dt = 1/2 and the trapezoid sum is exact for it
    const GridFunction s = GridFunction::sample(g, [](double t) { return std::sin(M_PI * t); });
    CHECK(lp_norm(s, 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));

    CHECK_THROWS_AS(lp_norm(s, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lp_norm(s, 0.5), std::invalid_argument);
}

TEST_CASE("linf_norm examples") {
    const Grid g8 = make_grid(1.0, 8);
    CHECK(linf_norm(GridFunction::zero(g8)) == 0.0);

    std::vector<double> v(9, 0.0);
    v[1] = 1.0;
    v[2] = -3.0;
    CHECK(linf_norm(GridFunction(g8, v)) == 3.0);

    const Grid g200 = make_grid(1.0, 200);
    const GridFunction q = GridFunction::sample(g200, [](double t) { return t * (1.0 - t); });
    CHECK(linf_norm(q) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("integrate examples") {
    const Grid g = make_grid(1.0, 100);
    std::vector<double> ones(101, 1.0);
    CHECK(integrate(ones, g) == doctest::Approx(1.0).epsilon(1e-14));

    const Grid g2 = make_grid(2.0, 16);
    std::vector<double> lin(17);
    for (int i = 0; i <= 16; ++i) lin[static_cast<size_t>(i)] = g2.node(i);
    CHECK(integrate(lin, g2) == doctest::Approx(2.0).epsilon(1e-14));

    std::vector<double> quad(101);
    for (int i = 0; i <= 100; ++i) quad[static_cast<size_t>(i)] = g.node(i) * g.node(i);
    CHECK(std::abs(integrate(quad, g) - 1.0 / 3.0) < 1e-4);

    std::vector<double> wrong(10, 1.0);
    CHECK_THROWS_AS(integrate(wrong, g), std::invalid_argument);
}

TEST_CASE("trapezoid rule exact for affine integrands") {
    std::mt19937_64 rng(100);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    const Grid g = make_grid(3.0, 64);
    for (int rep = 0; rep < 20; ++rep) {
        const double a = unif(rng), b = unif(rng);
        std::vector<double> v(65);
        for (int i = 0; i <= 64; ++i) v[static_cast<size_t>(i)] = a * g.node(i) + b;
        const double exact = a * g.T * g.T / 2.0 + b * g.T;
        CHECK(integrate(v, g) == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("lp_norm properties on random samples") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> cdist(-10.0, 10.0);
    const Grid g = make_grid(1.0, 64);

    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> uv(65, 0.0), vv(65, 0.0);
        for (int i = 1; i < 64; ++i) {
            uv[static_cast<size_t>(i)] = gauss(rng);
            vv[static_cast<size_t>(i)] = gauss(rng);
        }
        const GridFunction u(g, uv), v(g, vv);
        const double p = 1.0 + 0.5 + rep % 3; // 1.5, 2.5, 3.5 cycle

        // absolute homogeneity
        const double c = cdist(rng);
        CHECK(lp_norm(u.scaled(c), p) ==
              doctest::Approx(std::abs(c) * lp_norm(u, p)).epsilon(1e-12));

        // norm only sees |values|
        std::vector<double> av(65, 0.0);
        for (int i = 0; i <= 64; ++i) av[static_cast<size_t>(i)] = std::abs(uv[static_cast<size_t>(i)]);
        CHECK(lp_norm(GridFunction(g, av), p) == doctest::Approx(lp_norm(u, p)).epsilon(1e-14));

        // triangle inequality
        CHECK(lp_norm(u.plus(v), p) <= lp_norm(u, p) + lp_norm(v, p) + 1e-12);
    }
}
