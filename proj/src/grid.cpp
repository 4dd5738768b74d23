#include "fracplap/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fracplap {

std::vector<double> Grid::nodes() const {
    std::vector<double> t(static_cast<size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) t[static_cast<size_t>(i)] = node(i);
    t.back() = T;
    return t;
}

Grid make_grid(double T, int N) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("make_grid: T must be positive, got " + std::to_string(T));
    if (N < 8)
        throw std::invalid_argument("make_grid: N must be >= 8, got " + std::to_string(N));
    return Grid{T, N, T / static_cast<double>(N)};
}

std::vector<double> trapezoid_weights(const Grid& grid) {
    std::vector<double> w(static_cast<size_t>(grid.N) + 1, grid.h);
    w.front() = 0.5 * grid.h;
    w.back() = 0.5 * grid.h;
    return w;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != static_cast<size_t>(grid_.N) + 1)
        throw std::invalid_argument("GridFunction: value count " + std::to_string(values_.size()) +
                                    " does not match grid size " + std::to_string(grid_.N + 1));
    if (values_.front() != 0.0 || values_.back() != 0.0)
        throw std::invalid_argument("GridFunction: Dirichlet boundary requires values[0] = values[N] = 0");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("GridFunction: non-finite value");
}

GridFunction GridFunction::zero(const Grid& grid) {
    return GridFunction(grid, std::vector<double>(static_cast<size_t>(grid.N) + 1, 0.0));
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<double(double)>& f) {
    std::vector<double> v(static_cast<size_t>(grid.N) + 1);
    for (int i = 1; i < grid.N; ++i) v[static_cast<size_t>(i)] = f(grid.node(i));
    v.front() = 0.0;
    v.back() = 0.0;
    return GridFunction(grid, std::move(v));
}

GridFunction GridFunction::negated() const {
    std::vector<double> v(values_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = -values_[i];
    v.front() = 0.0;
    v.back() = 0.0;
    return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::scaled(double c) const {
    std::vector<double> v(values_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = c * values_[i];
    v.front() = 0.0;
    v.back() = 0.0;
    return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::plus(const GridFunction& other) const {
    if (!(grid_ == other.grid_))
        throw std::invalid_argument("GridFunction::plus: grid mismatch");
    std::vector<double> v(values_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + other.values_[i];
    v.front() = 0.0;
    v.back() = 0.0;
    return GridFunction(grid_, std::move(v));
}

double lp_norm(std::span<const double> v, const Grid& grid, double p) {
    if (!(p > 1.0))
        throw std::invalid_argument("lp_norm: p must exceed 1, got " + std::to_string(p));
    if (v.size() != static_cast<size_t>(grid.N) + 1)
        throw std::invalid_argument("lp_norm: length mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const double w = (i == 0 || i + 1 == v.size()) ? 0.5 * grid.h : grid.h;
        acc += w * std::pow(std::abs(v[i]), p);
    }
    return std::pow(acc, 1.0 / p);
}

double lp_norm(const GridFunction& u, double p) {
    return lp_norm(u.values(), u.grid(), p);
}

double linf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double linf_norm(const GridFunction& u) { return linf_norm(u.values()); }

double integrate(std::span<const double> g, const Grid& grid) {
    if (g.size() != static_cast<size_t>(grid.N) + 1)
        throw std::invalid_argument("integrate: length mismatch");
    double acc = 0.5 * (g.front() + g.back());
    for (size_t i = 1; i + 1 < g.size(); ++i) acc += g[i];
    return grid.h * acc;
}

} // namespace fracplap
