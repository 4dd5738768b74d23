#include "fracplap/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracplap {

double phi_p(double s, double p, double eps) {
    if (!(p > 1.0))
        throw std::invalid_argument("phi_p: p must exceed 1");
    if (eps == 0.0) {
        if (s == 0.0) return 0.0;
        return std::pow(std::abs(s), p - 2.0) * s;
    }
    return std::pow(s * s + eps * eps, 0.5 * (p - 2.0)) * s;
}

EnergyContext make_energy_context(const Grid& grid, double alpha, double p, Nonlinearity nl,
                                  std::optional<double> eps) {
    if (!(p > 1.0))
        throw std::invalid_argument("make_energy_context: p must exceed 1");
    if (!(alpha > 1.0 / p) || alpha > 1.0)
        throw std::invalid_argument("make_energy_context: alpha must lie in (1/p, 1], got alpha=" +
                                    std::to_string(alpha) + " with 1/p=" + std::to_string(1.0 / p));
    double e = eps.value_or(p >= 2.0 ? 0.0 : 1e-8);
    if (e < 0.0)
        throw std::invalid_argument("make_energy_context: epsilon_reg must be nonnegative");
    if (p >= 2.0) e = 0.0; // the map is already C^1 there
    return EnergyContext{grid,
                         FracOperator::assemble(OperatorKind::left_derivative, alpha, grid),
                         std::move(nl),
                         alpha,
                         p,
                         e,
                         trapezoid_weights(grid)};
}

double energy_value(const EnergyContext& ctx, std::span<const double> Lu, std::span<const double> u) {
    const size_t n = Lu.size();
    double kin = 0.0, pot = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double w = ctx.quad_w[i];
        kin += w * std::pow(std::abs(Lu[i]), ctx.p);
        pot += w * ctx.nl.F(ctx.grid.node(static_cast<int>(i)), u[i]);
    }
    return kin / ctx.p - pot;
}

EnergyReport energy(const EnergyContext& ctx, const GridFunction& u) {
    const std::vector<double> Lu = ctx.left.apply(u);
    EnergyReport rep;
    for (size_t i = 0; i < Lu.size(); ++i) {
        const double w = ctx.quad_w[i];
        rep.kinetic += w * std::pow(std::abs(Lu[i]), ctx.p);
        rep.potential += w * ctx.nl.F(ctx.grid.node(static_cast<int>(i)), u[i]);
    }
    rep.kinetic /= ctx.p;
    rep.value = rep.kinetic - rep.potential;
    const std::vector<double> g = gradient_from(ctx, Lu, u.values(), 0.0);
    rep.grad_norm = gradient_norm(ctx, g);
    return rep;
}

std::vector<double> gradient_from(const EnergyContext& ctx, std::span<const double> Lu,
                                  std::span<const double> u, double eps) {
    const size_t n = Lu.size();
    std::vector<double> phi(n);
    for (size_t i = 0; i < n; ++i) phi[i] = ctx.quad_w[i] * phi_p(Lu[i], ctx.p, eps);
    std::vector<double> g = ctx.left.apply_transpose(phi);
    for (size_t i = 0; i < n; ++i)
        g[i] -= ctx.quad_w[i] * ctx.nl.f(ctx.grid.node(static_cast<int>(i)), u[i]);
    g.front() = 0.0;
    g.back() = 0.0;
    return g;
}

std::vector<double> gradient(const EnergyContext& ctx, const GridFunction& u, double eps) {
    return gradient_from(ctx, ctx.left.apply(u), u.values(), eps);
}

std::vector<double> gradient(const EnergyContext& ctx, const GridFunction& u) {
    return gradient(ctx, u, ctx.epsilon_reg);
}

double gradient_norm(const EnergyContext& ctx, std::span<const double> g) {
    double acc = 0.0;
    for (double x : g) acc += x * x;
    return std::sqrt(acc / ctx.grid.h);
}

double weak_residual(const EnergyContext& ctx, const GridFunction& u, const GridFunction& v) {
    if (!(u.grid() == ctx.grid) || !(v.grid() == ctx.grid))
        throw std::invalid_argument("weak_residual: grid mismatch");
    const std::vector<double> Lu = ctx.left.apply(u);
    const std::vector<double> Lv = ctx.left.apply(v);
    double acc = 0.0;
    for (size_t i = 0; i < Lu.size(); ++i) {
        const double w = ctx.quad_w[i];
        const double t = ctx.grid.node(static_cast<int>(i));
        acc += w * phi_p(Lu[i], ctx.p, ctx.epsilon_reg) * Lv[i];
        acc -= w * ctx.nl.f(t, u[i]) * v[i];
    }
    return acc;
}

} // namespace fracplap
