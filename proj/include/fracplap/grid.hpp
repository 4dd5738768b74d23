#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace fracplap {

/// Uniform partition of [0, T] into N subintervals, nodes t_i = i*h.
/// Immutable after construction; cheap to copy.
struct Grid {
    double T = 1.0;
    int N = 8;
    double h = 0.125;

    double node(int i) const { return static_cast<double>(i) * h; }
    int size() const { return N + 1; }
    std::vector<double> nodes() const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.T == b.T && a.N == b.N;
    }
};

/// Throws std::invalid_argument unless T > 0 and N >= 8.
Grid make_grid(double T, int N);

/// Composite trapezoid quadrature weights: h/2 at the endpoints, h inside.
std::vector<double> trapezoid_weights(const Grid& grid);

/// Real values at the grid nodes with zero Dirichlet boundary.
/// Construction enforces values[0] == values[N] == 0 and finiteness.
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<double> values);

    static GridFunction zero(const Grid& grid);

    /// Samples f at the nodes; the boundary nodes are forced to exactly 0.
    static GridFunction sample(const Grid& grid, const std::function<double(double)>& f);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
    int size() const { return grid_.size(); }

    GridFunction negated() const;
    GridFunction scaled(double c) const;
    GridFunction plus(const GridFunction& other) const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// (sum_i w_i |u_i|^p)^(1/p) with trapezoid weights. Requires p > 1.
double lp_norm(const GridFunction& u, double p);

/// Same norm on a raw node vector (length N+1), e.g. an operator output.
double lp_norm(std::span<const double> v, const Grid& grid, double p);

double linf_norm(const GridFunction& u);
double linf_norm(std::span<const double> v);

/// Composite trapezoid value of a node-sampled integrand.
double integrate(std::span<const double> g, const Grid& grid);

} // namespace fracplap
