#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracplap/space.hpp"
#include "oracle.hpp"

using namespace fracplap;

TEST_CASE("embedding constants against the formulas") {
    const EmbeddingConstants a = embedding_constants(1.0, 2.0, 1.0);
    CHECK(a.c_p == doctest::Approx(1.0).epsilon(1e-14)); // Gamma(2) = 1
    CHECK(a.q == doctest::Approx(2.0).epsilon(1e-15));

    const EmbeddingConstants b = embedding_constants(0.75, 2.0, 1.0);
    CHECK(b.c_inf.has_value());
    // independent evaluation: 1 / (Gamma(0.75) * sqrt(0.5))
    const double ref = 1.0 / (std::tgamma(0.75) * std::sqrt(0.5));
    CHECK(*b.c_inf == doctest::Approx(ref).epsilon(1e-12));
    CHECK(*b.c_inf == doctest::Approx(1.154067477233).epsilon(1e-9));
    CHECK(b.c_p == doctest::Approx(std::pow(1.0, 0.75) / std::tgamma(1.75)).epsilon(1e-12));

    // boundary case alpha = 1/p: no sup-norm constant
    const EmbeddingConstants c = embedding_constants(0.5, 2.0, 1.0);
    CHECK_FALSE(c.c_inf.has_value());

    CHECK_THROWS_AS(embedding_constants(0.0, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(embedding_constants(0.5, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(embedding_constants(0.5, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("constants increase with T") {
    double prev_cp = 0.0, prev_cinf = 0.0;
    for (double T : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const EmbeddingConstants c = embedding_constants(0.75, 2.0, T);
        CHECK(c.c_p > prev_cp);
        CHECK(*c.c_inf > prev_cinf);
        prev_cp = c.c_p;
        prev_cinf = *c.c_inf;
    }
}

TEST_CASE("embedding ratios for specific functions") {
    const Grid g = make_grid(1.0, 512);
    const EmbeddingConstants consts = embedding_constants(0.75, 2.0, 1.0);
    const FracOperator L = FracOperator::assemble(OperatorKind::left_derivative, 0.75, g);

    SUBCASE("zero function trivially passes") {
        const EmbeddingReport r = verify_embedding(GridFunction::zero(g), consts, L);
        CHECK(r.trivial);
        CHECK(r.pass);
    }

    SUBCASE("parabola") {
        const GridFunction u = GridFunction::sample(g, [](double t) { return t * (1.0 - t); });
        const EmbeddingReport r = verify_embedding(u, consts, L);
        CHECK(r.pass);
        CHECK(r.ratio_p <= 1.0 + 10.0 * g.h);
        CHECK(r.ratio_inf <= 1.0 + 10.0 * g.h);
    }

    SUBCASE("random smooth samples all pass") {
        std::mt19937_64 rng(42);
        for (int rep = 0; rep < 200; ++rep) {
            const GridFunction u = oracle::random_smooth(g, rng, 10);
            const EmbeddingReport r = verify_embedding(u, consts, L);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("norm equivalence between the full and reduced norms") {
    const Grid g = make_grid(1.0, 256);
    const double alpha = 0.75, p = 2.0;
    const EmbeddingConstants consts = embedding_constants(alpha, p, 1.0);
    const FracOperator L = FracOperator::assemble(OperatorKind::left_derivative, alpha, g);
    const double factor = std::pow(1.0 + std::pow(consts.c_p, p), 1.0 / p);

    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 50; ++rep) {
        const GridFunction u = oracle::random_smooth(g, rng);
        const double reduced = lp_norm(L.apply(u), g, p);
        const double full =
            std::pow(std::pow(lp_norm(u, p), p) + std::pow(reduced, p), 1.0 / p);
        CHECK(reduced <= full + 1e-12);
        CHECK(full <= factor * reduced * (1.0 + 10.0 * g.h));
    }
}

TEST_CASE("survey runs and reports worst ratios") {
    const EmbeddingSurvey s = survey_embedding(0.75, 2.0, 1.0, 128, 100, 3);
    CHECK(s.pass);
    CHECK(s.samples == 100);
    CHECK(s.worst_ratio_p > 0.0);
    CHECK(s.worst_ratio_p <= 1.0 + 10.0 / 128.0);
    CHECK(s.worst_ratio_inf <= 1.0 + 10.0 / 128.0);
}
