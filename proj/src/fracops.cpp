#include "fracplap/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fracplap {

const char* to_string(OperatorKind k) {
    switch (k) {
        case OperatorKind::left_derivative: return "left_derivative";
        case OperatorKind::right_derivative: return "right_derivative";
        case OperatorKind::left_integral: return "left_integral";
        case OperatorKind::right_integral: return "right_integral";
    }
    return "?";
}

namespace {

std::vector<double> binomial_series(double a, int count) {
    std::vector<double> w(static_cast<size_t>(count));
    w[0] = 1.0;
    for (int k = 1; k < count; ++k)
        w[static_cast<size_t>(k)] = w[static_cast<size_t>(k - 1)] * (1.0 - (a + 1.0) / static_cast<double>(k));
    return w;
}

} // namespace

GLWeights gl_weights(double alpha, int count) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("gl_weights: alpha must lie in (0, 1], got " + std::to_string(alpha));
    if (count < 1)
        throw std::invalid_argument("gl_weights: count must be >= 1");
    return GLWeights{alpha, binomial_series(alpha, count)};
}

GLWeights gl_integral_weights(double alpha, int count) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("gl_integral_weights: alpha must be positive");
    if (count < 1)
        throw std::invalid_argument("gl_integral_weights: count must be >= 1");
    return GLWeights{alpha, binomial_series(-alpha, count)};
}

FracOperator FracOperator::assemble(OperatorKind kind, double alpha, const Grid& grid) {
    const bool derivative = kind == OperatorKind::left_derivative || kind == OperatorKind::right_derivative;
    const bool left = kind == OperatorKind::left_derivative || kind == OperatorKind::left_integral;

    std::vector<double> coeff;
    double scale;
    if (derivative) {
        coeff = gl_weights(alpha, grid.N + 1).w;
        scale = std::pow(grid.h, -alpha);
    } else {
        coeff = gl_integral_weights(alpha, grid.N + 1).w;
        scale = std::pow(grid.h, alpha);
    }
    for (double& c : coeff) c *= scale;
    return FracOperator(kind, alpha, grid, std::move(coeff), left);
}

double FracOperator::entry(int i, int j) const {
    if (lower_) {
        if (j > i) return 0.0;
        return coeff_[static_cast<size_t>(i - j)];
    }
    if (i > j) return 0.0;
    return coeff_[static_cast<size_t>(j - i)];
}

std::vector<double> FracOperator::apply(std::span<const double> x) const {
    const size_t n = static_cast<size_t>(grid_.N) + 1;
    if (x.size() != n)
        throw std::invalid_argument("FracOperator::apply: length mismatch");
    std::vector<double> y(n, 0.0);
    if (lower_) {
        for (size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (size_t k = 0; k <= i; ++k) acc += coeff_[k] * x[i - k];
            y[i] = acc;
        }
    } else {
        for (size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (size_t k = 0; i + k < n; ++k) acc += coeff_[k] * x[i + k];
            y[i] = acc;
        }
    }
    return y;
}

std::vector<double> FracOperator::apply(const GridFunction& u) const {
    if (!(u.grid() == grid_))
        throw std::invalid_argument("FracOperator::apply: grid mismatch");
    return apply(u.values());
}

std::vector<double> FracOperator::apply_transpose(std::span<const double> x) const {
    const size_t n = static_cast<size_t>(grid_.N) + 1;
    if (x.size() != n)
        throw std::invalid_argument("FracOperator::apply_transpose: length mismatch");
    std::vector<double> y(n, 0.0);
    if (lower_) {
        // transpose of lower Toeplitz = upper Toeplitz with the same coefficients
        for (size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (size_t k = 0; i + k < n; ++k) acc += coeff_[k] * x[i + k];
            y[i] = acc;
        }
    } else {
        for (size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (size_t k = 0; k <= i; ++k) acc += coeff_[k] * x[i - k];
            y[i] = acc;
        }
    }
    return y;
}

void FracOperator::dump_csv(std::ostream& os) const {
    const int n = grid_.N + 1;
    char buf[32];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17e", entry(i, j));
            os << buf;
            if (j + 1 < n) os << ',';
        }
        os << '\n';
    }
}

ConvergenceStudy convergence_order(OperatorKind kind, double alpha,
                                   const std::function<double(double)>& u_exact,
                                   const std::function<double(double)>& d_exact,
                                   std::span<const int> n_list, double T) {
    if (n_list.size() < 2)
        throw std::invalid_argument("convergence_order: need at least 2 grid sizes");

    ConvergenceStudy study;
    for (int n : n_list) {
        const Grid grid = make_grid(T, n);
        const FracOperator op = FracOperator::assemble(kind, alpha, grid);
        std::vector<double> u(static_cast<size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) u[static_cast<size_t>(i)] = u_exact(grid.node(i));
        const std::vector<double> d = op.apply(u);
        double err = 0.0;
        for (int i = 1; i < n; ++i) {
            if (grid.node(i) < 0.25 * T) continue;
            err = std::max(err, std::abs(d[static_cast<size_t>(i)] - d_exact(grid.node(i))));
        }
        study.n_values.push_back(n);
        study.errors.push_back(err);
    }

    // least-squares slope of log(err) against log(h)
    const size_t m = study.errors.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t k = 0; k < m; ++k) {
        const double x = std::log(T / static_cast<double>(study.n_values[k]));
        const double y = std::log(study.errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    study.order = (static_cast<double>(m) * sxy - sx * sy) / denom;
    return study;
}

} // namespace fracplap
