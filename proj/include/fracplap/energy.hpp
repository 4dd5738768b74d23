#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fracplap/fracops.hpp"
#include "fracplap/grid.hpp"
#include "fracplap/problem.hpp"

namespace fracplap {

/// p-Laplacian map |s|^{p-2} s with value 0 at s = 0, or its smooth
/// surrogate (s^2 + eps^2)^{(p-2)/2} s when eps > 0. Requires p > 1.
double phi_p(double s, double p, double eps = 0.0);

/// Everything needed to evaluate the energy
///   I(u) = (1/p) ||L u||_Lp^p - int F(t, u) dt
/// and its discrete gradient. The left derivative operator L has order
/// alpha in (1/p, 1]; the gradient pairs against the weak form through
/// the exact transpose of L.
struct EnergyContext {
    Grid grid;
    FracOperator left; // left_derivative of order alpha
    Nonlinearity nl;
    double alpha;
    double p;
    double epsilon_reg;          // 0 for p >= 2, default 1e-8 for 1 < p < 2
    std::vector<double> quad_w;  // trapezoid weights
};

/// Validates p > 1 and alpha in (1/p, 1]; assembles the operator.
/// eps override: pass 0 to disable the small-p regularization.
EnergyContext make_energy_context(const Grid& grid, double alpha, double p, Nonlinearity nl,
                                  std::optional<double> eps = {});

struct EnergyReport {
    double value = 0.0;     // kinetic - potential
    double kinetic = 0.0;   // (1/p) ||L u||_Lp^p
    double potential = 0.0; // int F(t, u) dt
    double grad_norm = 0.0; // h-weighted norm of the eps = 0 gradient
};

EnergyReport energy(const EnergyContext& ctx, const GridFunction& u);

/// Energy value from a precomputed L u (solver hot path).
double energy_value(const EnergyContext& ctx, std::span<const double> Lu, std::span<const double> u);

/// Discrete gradient g with boundary entries forced to zero:
///   g = L^T (w .* phi_p(L u)) - w .* f(t, u),
/// so that dot(g, v) discretizes the weak pairing
///   int phi_p(L u) L v - int f(t, u) v
/// exactly for every zero-boundary v.
std::vector<double> gradient(const EnergyContext& ctx, const GridFunction& u);
std::vector<double> gradient(const EnergyContext& ctx, const GridFunction& u, double eps);
std::vector<double> gradient_from(const EnergyContext& ctx, std::span<const double> Lu,
                                  std::span<const double> u, double eps);

/// Convergence measure: ||g||_2 / sqrt(h), the discrete L2 norm of the
/// node-density gradient field g / w.
double gradient_norm(const EnergyContext& ctx, std::span<const double> g);

/// Two-term weak-form pairing; equals dot(gradient(u), v) to rounding.
double weak_residual(const EnergyContext& ctx, const GridFunction& u, const GridFunction& v);

} // namespace fracplap
