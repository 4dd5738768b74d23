#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracplap/fracops.hpp"
#include "fracplap/grid.hpp"
#include "oracle.hpp"

using namespace fracplap;

TEST_CASE("gl_weights recurrence") {
    const GLWeights w1 = gl_weights(1.0, 3);
    CHECK(w1.w[0] == 1.0);
    CHECK(w1.w[1] == -1.0);
    CHECK(w1.w[2] == 0.0);

    const GLWeights wh = gl_weights(0.5, 3);
    CHECK(wh.w[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(wh.w[1] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(wh.w[2] == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(wh.w[0] + wh.w[1] + wh.w[2] == doctest::Approx(0.375).epsilon(1e-15));

    CHECK_THROWS_AS(gl_weights(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(gl_weights(1.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(gl_weights(0.5, 0), std::invalid_argument);
}

TEST_CASE("gl_weights sign pattern and partial sums") {
    for (double alpha : {0.1, 0.35, 0.5, 0.75, 0.99, 1.0}) {
        const GLWeights w = gl_weights(alpha, 1000);
        CHECK(w.w[0] == 1.0);
        CHECK(w.w[1] == doctest::Approx(-alpha).epsilon(1e-15));
        double partial = 0.0;
        for (size_t k = 0; k < w.w.size(); ++k) {
            if (k >= 1) CHECK(w.w[k] <= 0.0);
            partial += w.w[k];
            CHECK(partial >= -1e-15);
        }
    }
}

TEST_CASE("alpha = 1 reduces to a backward difference") {
    const Grid g = make_grid(1.0, 64);
    const FracOperator L = FracOperator::assemble(OperatorKind::left_derivative, 1.0, g);
    const GridFunction u = GridFunction::sample(g, [](double t) { return t * (1.0 - t); });
    const std::vector<double> d = L.apply(u);
    for (int i = 1; i < g.N; ++i) {
        const double bd = (u[i] - u[i - 1]) / g.h;
        CHECK(d[static_cast<size_t>(i)] == doctest::Approx(bd).epsilon(1e-12));
    }

    // u(t) = t has derivative 1 at interior nodes, exactly for the scheme
    std::vector<double> lin(65);
    for (int i = 0; i <= 64; ++i) lin[static_cast<size_t>(i)] = g.node(i);
    const std::vector<double> dl = L.apply(lin);
    for (int i = 1; i < g.N; ++i) CHECK(dl[static_cast<size_t>(i)] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("right derivative at alpha = 1 acts as minus the forward difference") {
    const Grid g = make_grid(1.0, 128);
    const FracOperator R = FracOperator::assemble(OperatorKind::right_derivative, 1.0, g);
    const GridFunction u = GridFunction::sample(g, [](double t) { return std::sin(M_PI * t); });
    const std::vector<double> d = R.apply(u);
    for (int i = 1; i < g.N; ++i) {
        const double up = -M_PI * std::cos(M_PI * g.node(i));
        CHECK(std::abs(d[static_cast<size_t>(i)] - up) <= 4.0 * g.h);
    }
}

TEST_CASE("half derivative of t against the definition oracle") {
    const Grid g = make_grid(1.0, 256);
    const FracOperator L = FracOperator::assemble(OperatorKind::left_derivative, 0.5, g);
    std::vector<double> lin(257);
    for (int i = 0; i <= 256; ++i) lin[static_cast<size_t>(i)] = g.node(i);
    const std::vector<double> d = L.apply(lin);

    // closed form at t = 1 is 2/sqrt(pi); the oracle must agree with it
    const double viaOracle = oracle::rl_left_derivative([](double s) { return s; }, 0.5, 1.0);
    const double closed = 2.0 / std::sqrt(M_PI);
    CHECK(viaOracle == doctest::Approx(closed).epsilon(1e-6));
    CHECK(std::abs(d[256] - viaOracle) < 0.01);
}

TEST_CASE("left integral of order 1 is the running integral") {
    const Grid g = make_grid(1.0, 64);
    const FracOperator J = FracOperator::assemble(OperatorKind::left_integral, 1.0, g);
    std::vector<double> ones(65, 1.0);
    const std::vector<double> v = J.apply(ones);
    CHECK(std::abs(v[64] - 1.0) <= 2.0 * g.h);
}

TEST_CASE("apply is linear and validates the grid") {
    const Grid g = make_grid(1.0, 32);
    const FracOperator L = FracOperator::assemble(OperatorKind::left_derivative, 0.7, g);

    CHECK(linf_norm(L.apply(GridFunction::zero(g))) == 0.0);

    std::mt19937_64 rng(11);
    const GridFunction u = oracle::random_rough(g, rng);
    const GridFunction v = oracle::random_rough(g, rng);
    const double a = 2.25, b = -0.75;
    const std::vector<double> lhs = L.apply(u.scaled(a).plus(v.scaled(b)));
    const std::vector<double> lu = L.apply(u), lv = L.apply(v);
    for (size_t i = 0; i < lhs.size(); ++i)
        CHECK(lhs[i] == doctest::Approx(a * lu[i] + b * lv[i]).epsilon(1e-12));

    const Grid other = make_grid(1.0, 16);
    CHECK_THROWS_AS(L.apply(GridFunction::zero(other)), std::invalid_argument);
}

TEST_CASE("reflection identity between left and right operators") {
    const Grid g = make_grid(1.0, 64);
    const FracOperator L = FracOperator::assemble(OperatorKind::left_derivative, 0.6, g);
    const FracOperator R = FracOperator::assemble(OperatorKind::right_derivative, 0.6, g);

    std::mt19937_64 rng(5);
    const GridFunction u = oracle::random_smooth(g, rng);
    std::vector<double> rev(65);
    for (int i = 0; i <= 64; ++i) rev[static_cast<size_t>(i)] = u[64 - i];
    const std::vector<double> lu = L.apply(u);
    const std::vector<double> rrev = R.apply(rev);
    for (int i = 0; i <= 64; ++i)
        CHECK(lu[static_cast<size_t>(i)] ==
              doctest::Approx(rrev[static_cast<size_t>(64 - i)]).epsilon(1e-12));
}

TEST_CASE("adjoint identity and the direct right-GL construction") {
    const Grid g = make_grid(1.0, 128);
    const double alpha = 0.75;
    const FracOperator L = FracOperator::assemble(OperatorKind::left_derivative, alpha, g);
    const FracOperator R = FracOperator::assemble(OperatorKind::right_derivative, alpha, g);

    // R must be the exact transpose of L
    for (int i = 0; i <= g.N; i += 7)
        for (int j = 0; j <= g.N; j += 5) CHECK(R.entry(i, j) == L.entry(j, i));

    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        const GridFunction u = oracle::random_rough(g, rng);
        const GridFunction v = oracle::random_rough(g, rng);
        const std::vector<double> Lu = L.apply(u);
        const std::vector<double> Rv = R.apply(v);
        double a = 0.0, b = 0.0;
        for (int i = 0; i <= g.N; ++i) {
            a += Lu[static_cast<size_t>(i)] * v[i];
            b += u[i] * Rv[static_cast<size_t>(i)];
        }
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }

    // Independent right-GL sums h^-a sum_k w_k u_{i+k} reproduce R
    std::vector<double> w(static_cast<size_t>(g.N) + 1);
    w[0] = 1.0;
    for (int k = 1; k <= g.N; ++k)
        w[static_cast<size_t>(k)] = w[static_cast<size_t>(k - 1)] * (1.0 - (alpha + 1.0) / k);
    const GridFunction s = GridFunction::sample(g, [](double t) { return std::sin(M_PI * t); });
    const std::vector<double> rs = R.apply(s);
    const double scale = std::pow(g.h, -alpha);
    double worst = 0.0;
    for (int i = 0; i <= g.N; ++i) {
        double acc = 0.0;
        for (int k = 0; i + k <= g.N; ++k) acc += w[static_cast<size_t>(k)] * s[i + k];
        worst = std::max(worst, std::abs(scale * acc - rs[static_cast<size_t>(i)]));
    }
    CHECK(worst <= 10.0 * g.h);
}

TEST_CASE("derivative and integral of the same order compose to identity") {
    const Grid g = make_grid(1.0, 128);
    for (double alpha : {0.4, 0.6, 0.9}) {
        const FracOperator D = FracOperator::assemble(OperatorKind::left_derivative, alpha, g);
        const FracOperator J = FracOperator::assemble(OperatorKind::left_integral, alpha, g);
        std::mt19937_64 rng(31);
        const GridFunction u = oracle::random_smooth(g, rng);
        const std::vector<double> back = D.apply(J.apply(u));
        double worst = 0.0;
        for (int i = 0; i <= g.N; ++i)
            worst = std::max(worst, std::abs(back[static_cast<size_t>(i)] - u[i]));
        // exact cancellation of the binomial series, so far below the O(h) claim
        CHECK(worst <= 1e-10);
        CHECK(worst <= g.h);
    }
}

TEST_CASE("operators are triangular Toeplitz") {
    const Grid g = make_grid(1.0, 32);
    for (OperatorKind kind : {OperatorKind::left_derivative, OperatorKind::right_derivative,
                              OperatorKind::left_integral, OperatorKind::right_integral}) {
        const FracOperator op = FracOperator::assemble(kind, 0.7, g);
        const bool lower =
            kind == OperatorKind::left_derivative || kind == OperatorKind::left_integral;
        for (int i = 0; i <= g.N; ++i)
            for (int j = 0; j <= g.N; ++j) {
                if (lower && j > i) CHECK(op.entry(i, j) == 0.0);
                if (!lower && i > j) CHECK(op.entry(i, j) == 0.0);
                if (i > 0 && j > 0) CHECK(op.entry(i, j) == op.entry(i - 1, j - 1));
            }
    }
}

TEST_CASE("convergence order against the definition oracle") {
    const std::vector<int> ns{64, 128, 256};

    auto lin = [](double t) { return t; };
    auto quad = [](double t) { return t * t; };

    for (double alpha : {0.5, 0.75}) {
        const ConvergenceStudy a = convergence_order(
            OperatorKind::left_derivative, alpha, lin,
            [alpha](double t) { return oracle::rl_left_derivative([](double s) { return s; }, alpha, t); },
            ns);
        CHECK(a.order >= 0.8);
        CHECK(a.order <= 1.2);

        const ConvergenceStudy b = convergence_order(
            OperatorKind::left_derivative, alpha, quad,
            [alpha](double t) {
                return oracle::rl_left_derivative([](double s) { return s * s; }, alpha, t);
            },
            ns);
        CHECK(b.order >= 0.8);
        CHECK(b.order <= 1.2);
    }

    // classical backward difference at alpha = 1
    const ConvergenceStudy c =
        convergence_order(OperatorKind::left_derivative, 1.0, quad,
                          [](double t) { return 2.0 * t; }, ns);
    CHECK(c.order >= 0.8);
    CHECK(c.order <= 1.2);

    const std::vector<int> tooFew{64};
    CHECK_THROWS_AS(convergence_order(OperatorKind::left_derivative, 0.5, lin, lin, tooFew),
                    std::invalid_argument);
}
