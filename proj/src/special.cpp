#include "fracplap/special.hpp"

#include <cmath>
#include <stdexcept>

namespace fracplap {

namespace {

// Godfrey's coefficients for g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

} // namespace

double gamma_fn(double x) {
    if (!(x > 0.0))
        throw std::invalid_argument("gamma_fn: requires x > 0");
    // Reduce x < 0.5 through the recurrence Gamma(x) = Gamma(x+1)/x to keep
    // the Lanczos series in its accurate range.
    if (x < 0.5) return gamma_fn(x + 1.0) / x;

    const double z = x - 1.0;
    double series = kLanczos[0];
    for (int k = 1; k < 9; ++k) series += kLanczos[k] / (z + static_cast<double>(k));

    const double t = z + 7.5; // z + g + 0.5
    const double sqrt_two_pi = 2.5066282746310002;
    return sqrt_two_pi * std::pow(t, z + 0.5) * std::exp(-t) * series;
}

} // namespace fracplap
