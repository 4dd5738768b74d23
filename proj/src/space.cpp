#include "fracplap/space.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "fracplap/special.hpp"

namespace fracplap {

EmbeddingConstants embedding_constants(double alpha, double p, double T) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("embedding_constants: alpha must lie in (0, 1]");
    if (!(p > 1.0))
        throw std::invalid_argument("embedding_constants: p must exceed 1");
    if (!(T > 0.0))
        throw std::invalid_argument("embedding_constants: T must be positive");

    EmbeddingConstants c;
    c.alpha = alpha;
    c.p = p;
    c.q = p / (p - 1.0);
    c.T = T;
    c.c_p = std::pow(T, alpha) / gamma_fn(alpha + 1.0);
    if (alpha > 1.0 / p) {
        const double expo = alpha * c.q - c.q + 1.0; // > 0 exactly when alpha > 1/p
        c.c_inf = std::pow(T, alpha - 1.0 / p) / (gamma_fn(alpha) * std::pow(expo, 1.0 / c.q));
    }
    return c;
}

EmbeddingReport verify_embedding(const GridFunction& u, const EmbeddingConstants& consts,
                                 const FracOperator& left) {
    if (!(u.grid() == left.grid()))
        throw std::invalid_argument("verify_embedding: grid mismatch");

    EmbeddingReport rep;
    const std::vector<double> Lu = left.apply(u);
    const double deriv_norm = lp_norm(Lu, u.grid(), consts.p);
    if (deriv_norm == 0.0) {
        rep.trivial = true;
        rep.pass = true;
        return rep;
    }
    const double tol = 1.0 + 10.0 * u.grid().h;
    rep.ratio_p = lp_norm(u, consts.p) / (consts.c_p * deriv_norm);
    rep.pass = rep.ratio_p <= tol;
    if (consts.c_inf) {
        rep.ratio_inf = linf_norm(u) / (*consts.c_inf * deriv_norm);
        rep.pass = rep.pass && rep.ratio_inf <= tol;
    }
    return rep;
}

EmbeddingSurvey survey_embedding(double alpha, double p, double T, int N, int samples,
                                 std::uint64_t seed) {
    const Grid grid = make_grid(T, N);
    const EmbeddingConstants consts = embedding_constants(alpha, p, T);
    const FracOperator left = FracOperator::assemble(OperatorKind::left_derivative, alpha, grid);

    EmbeddingSurvey survey;
    survey.alpha = alpha;
    survey.p = p;
    survey.T = T;
    survey.N = N;
    survey.samples = samples;
    survey.c_p = consts.c_p;
    survey.c_inf = consts.c_inf.value_or(0.0);
    survey.pass = true;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int modes = 12;

    for (int s = 0; s < samples; ++s) {
        std::vector<double> coef(modes);
        for (int m = 0; m < modes; ++m)
            coef[static_cast<size_t>(m)] = gauss(rng) / std::pow(m + 1.0, 1.5);
        GridFunction u = GridFunction::sample(grid, [&](double t) {
            double v = 0.0;
            for (int m = 0; m < modes; ++m)
                v += coef[static_cast<size_t>(m)] * std::sin(M_PI * (m + 1.0) * t / T);
            return v;
        });
        const EmbeddingReport rep = verify_embedding(u, consts, left);
        survey.worst_ratio_p = std::max(survey.worst_ratio_p, rep.ratio_p);
        survey.worst_ratio_inf = std::max(survey.worst_ratio_inf, rep.ratio_inf);
        survey.pass = survey.pass && rep.pass;
    }
    return survey;
}

} // namespace fracplap
