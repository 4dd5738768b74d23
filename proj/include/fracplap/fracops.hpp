#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "fracplap/grid.hpp"

namespace fracplap {

enum class OperatorKind {
    left_derivative,
    right_derivative,
    left_integral,
    right_integral,
};

const char* to_string(OperatorKind k);

/// Grunwald-Letnikov derivative weights w_0 = 1,
/// w_k = w_{k-1} * (1 - (alpha+1)/k), i.e. (-1)^k * binom(alpha, k).
struct GLWeights {
    double alpha;
    std::vector<double> w;
};

/// Requires alpha in (0, 1] and count >= 1.
GLWeights gl_weights(double alpha, int count);

/// Same recurrence with alpha -> -alpha: nonnegative integral weights
/// binom(alpha+k-1, k). Requires alpha > 0.
GLWeights gl_integral_weights(double alpha, int count);

/// Discrete Riemann-Liouville operator on a uniform grid.
///
/// All four kinds are triangular Toeplitz: entry (i, j) depends only on
/// i - j. Left operators act causally (lower triangular, convolution with
/// the GL weights scaled by h^{-alpha}, or h^{alpha} for integrals); the
/// right operators are their exact transposes, which on a uniform grid
/// coincide with the right-sided GL sums h^{-alpha} sum_k w_k u_{i+k}.
class FracOperator {
public:
    static FracOperator assemble(OperatorKind kind, double alpha, const Grid& grid);

    OperatorKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    const Grid& grid() const { return grid_; }

    /// Toeplitz coefficient c_k (already scaled by the power of h).
    double coeff(int k) const { return coeff_[static_cast<size_t>(k)]; }

    /// Dense matrix entry, zero outside the triangle.
    double entry(int i, int j) const;

    std::vector<double> apply(const GridFunction& u) const;
    std::vector<double> apply(std::span<const double> x) const;

    /// Action of the transposed matrix (used by the energy gradient).
    std::vector<double> apply_transpose(std::span<const double> x) const;

    /// Full dense matrix, row-major CSV, full-precision scientific notation.
    void dump_csv(std::ostream& os) const;

private:
    FracOperator(OperatorKind kind, double alpha, const Grid& grid, std::vector<double> coeff, bool lower)
        : kind_(kind), alpha_(alpha), grid_(grid), coeff_(std::move(coeff)), lower_(lower) {}

    OperatorKind kind_;
    double alpha_;
    Grid grid_;
    std::vector<double> coeff_;
    bool lower_;
};

struct ConvergenceStudy {
    std::vector<int> n_values;
    std::vector<double> errors; // max error over interior nodes with t >= T/4
    double order;               // least-squares slope of log(error) vs log(h)
};

/// Measures the convergence order of the discrete operator against a
/// closed-form pair (u, D^alpha u). The error window starts at T/4: for
/// test functions like u(t) = t the exact fractional derivative has a
/// t^{-alpha} derivative blow-up at 0 and the GL scheme drops to order
/// 1 - alpha inside that boundary layer, while the bulk order is 1.
ConvergenceStudy convergence_order(OperatorKind kind, double alpha,
                                   const std::function<double(double)>& u_exact,
                                   const std::function<double(double)>& d_exact,
                                   std::span<const int> n_list, double T = 1.0);

} // namespace fracplap
