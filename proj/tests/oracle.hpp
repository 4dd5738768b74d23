// Test-only oracles, deliberately independent of the library code paths
// they check: a separate adaptive quadrature, the Riemann-Liouville
// derivative evaluated straight from its integral definition, and random
// input generators with fixed seeds.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "fracplap/energy.hpp"
#include "fracplap/grid.hpp"

namespace oracle {

// Adaptive Simpson with Richardson correction (independent of the
// quadrature inside the library).
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    if (depth <= 0 || std::abs(err) <= tol) return left + right + err;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Left Riemann-Liouville fractional integral of order gamma at tau,
// singularity removed by the substitution v = (tau - s)^gamma.
inline double rl_left_integral(const std::function<double(double)>& u, double gamma, double tau) {
    if (tau <= 0.0) return 0.0;
    const double upper = std::pow(tau, gamma);
    const double val = integrate(
        [&](double v) { return u(tau - std::pow(v, 1.0 / gamma)); }, 0.0, upper, 1e-13);
    return val / (std::tgamma(gamma) * gamma);
}

// Left RL derivative of order alpha in (0,1): d/dt of the (1-alpha)
// integral, realized by a central difference. u must be defined slightly
// beyond t.
inline double rl_left_derivative(const std::function<double(double)>& u, double alpha, double t,
                                 double delta = 1e-4) {
    const double gamma = 1.0 - alpha;
    const double up = rl_left_integral(u, gamma, t + delta);
    const double dn = rl_left_integral(u, gamma, t - delta);
    return (up - dn) / (2.0 * delta);
}

// Central finite difference of the energy along v.
inline double directional_derivative(const fracplap::EnergyContext& ctx,
                                     const fracplap::GridFunction& u,
                                     const fracplap::GridFunction& v, double tau = 1e-5) {
    const double up = fracplap::energy(ctx, u.plus(v.scaled(tau))).value;
    const double dn = fracplap::energy(ctx, u.plus(v.scaled(-tau))).value;
    return (up - dn) / (2.0 * tau);
}

// Seeded random zero-boundary function, sum of decaying Fourier modes.
inline fracplap::GridFunction random_smooth(const fracplap::Grid& grid, std::mt19937_64& rng,
                                            int modes = 8, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> coef(static_cast<size_t>(modes));
    for (int m = 0; m < modes; ++m) coef[static_cast<size_t>(m)] = gauss(rng) / ((m + 1.0) * (m + 1.0));
    return fracplap::GridFunction::sample(grid, [&](double t) {
        double s = 0.0;
        for (int m = 0; m < modes; ++m)
            s += coef[static_cast<size_t>(m)] * std::sin(M_PI * (m + 1.0) * t / grid.T);
        return scale * s;
    });
}

// Seeded random zero-boundary vector with independent node values.
inline fracplap::GridFunction random_rough(const fracplap::Grid& grid, std::mt19937_64& rng,
                                           double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(static_cast<size_t>(grid.N) + 1, 0.0);
    for (int i = 1; i < grid.N; ++i) v[static_cast<size_t>(i)] = scale * gauss(rng);
    return fracplap::GridFunction(grid, std::move(v));
}

} // namespace oracle
