#pragma once

#include <cstdint>
#include <optional>

#include "fracplap/fracops.hpp"
#include "fracplap/grid.hpp"

namespace fracplap {

/// Embedding constants of the fractional derivative space:
///   c_p   = T^alpha / Gamma(alpha + 1)
///   c_inf = T^{alpha - 1/p} / (Gamma(alpha) * (alpha*q - q + 1)^{1/q}),
/// the latter defined only when alpha > 1/p (q = p/(p-1)).
struct EmbeddingConstants {
    double alpha;
    double p;
    double q;
    double T;
    double c_p;
    std::optional<double> c_inf;
};

/// Requires 0 < alpha <= 1, p > 1, T > 0.
EmbeddingConstants embedding_constants(double alpha, double p, double T);

struct EmbeddingReport {
    double ratio_p = 0.0;   // ||u||_Lp / (c_p ||Lu||_Lp)
    double ratio_inf = 0.0; // ||u||_inf / (c_inf ||Lu||_Lp), 0 if c_inf absent
    bool trivial = false;   // u had zero derivative norm
    bool pass = false;      // both ratios <= 1 + 10 h
};

/// Measures the discrete embedding ratios of a single function against the
/// reduced norm ||Lu||_Lp. The discrete tolerance is 10 h.
EmbeddingReport verify_embedding(const GridFunction& u, const EmbeddingConstants& consts,
                                 const FracOperator& left);

struct EmbeddingSurvey {
    double alpha, p, T;
    int N = 0;
    int samples = 0;
    double c_p = 0.0;
    double c_inf = 0.0; // 0 when absent
    double worst_ratio_p = 0.0;
    double worst_ratio_inf = 0.0;
    bool pass = false;
};

/// Runs verify_embedding over `samples` random zero-boundary functions
/// (seeded random Fourier sums) and records the worst ratios.
EmbeddingSurvey survey_embedding(double alpha, double p, double T, int N, int samples,
                                 std::uint64_t seed);

} // namespace fracplap
