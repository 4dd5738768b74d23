#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracplap/grid.hpp"

namespace fracplap {

/// Scalar coefficient of t: either a constant or node samples with linear
/// interpolation in between.
class Coefficient {
public:
    Coefficient() : constant_(0.0) {}
    static Coefficient constant(double c);
    static Coefficient samples(std::vector<double> t, std::vector<double> v);

    double operator()(double t) const;
    bool is_constant() const { return t_.empty(); }
    double constant_value() const { return constant_; }
    const std::vector<double>& sample_values() const { return v_; }

private:
    double constant_;
    std::vector<double> t_, v_;
};

enum class NonlinearityFamily { power_odd, sign_changing_power, custom };

const char* to_string(NonlinearityFamily f);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

/// Right-hand side f(t, x) together with its primitive F(t, x) and the
/// growth/lower-bound metadata used by the hypothesis checkers.
///
/// Power families: f = r * b(t) * |x|^{r-2} x (value 0 at x = 0), with the
/// closed-form primitive F = b(t) * |x|^r. A custom family supplies f
/// directly and gets F by adaptive quadrature.
struct Nonlinearity {
    NonlinearityFamily family = NonlinearityFamily::power_odd;
    double r = 1.5;
    Coefficient b;
    Coefficient a;                   // envelope for the growth bound, default |b|
    std::optional<double> eta;
    std::optional<double> delta;
    Interval interval_I;
    double r1 = 1.5;
    double r2 = 1.5;
    double domain_T = 1.0;
    std::function<double(double, double)> custom_f;
    std::function<double(double, double)> custom_F; // optional closed-form primitive

    static Nonlinearity power(double r, Coefficient b, Interval I, double T,
                              std::optional<double> eta = {}, std::optional<double> delta = {});
    static Nonlinearity custom(std::function<double(double, double)> f, Interval I, double T);
    /// Custom family with a closed-form primitive (skips the quadrature).
    static Nonlinearity custom(std::function<double(double, double)> f,
                               std::function<double(double, double)> F, Interval I, double T);

    double f(double t, double x) const;
    double F(double t, double x) const;
    double envelope_a(double t) const; // |b(t)| unless an explicit a was set
    bool has_explicit_a = false;
};

struct Witness {
    double t = 0.0;
    double x = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct HypothesisCheck {
    std::string name;
    bool pass = false;
    int samples = 0;
    std::optional<Witness> witness; // present when the check fails
};

struct HypothesisReport {
    HypothesisCheck h1, h2, h3, h4;
};

/// Growth bound |f(t,x)| <= r1 * a(t) * |x|^{r1-1}, sampled on the grid
/// times 64 log-spaced magnitudes per sign in [x_lo, x_hi].
HypothesisCheck check_h1(const Nonlinearity& nl, const Grid& grid, double x_lo, double x_hi);
HypothesisCheck check_h1(const Nonlinearity& nl, const Grid& grid);

/// Local lower bound F(t,x) >= eta * |x|^{r2} on interval_I x [-delta, delta].
HypothesisCheck check_h2(const Nonlinearity& nl, const Grid& grid);

/// Oddness f(t,x) = -f(t,-x) on samples.
HypothesisCheck check_h3(const Nonlinearity& nl, const Grid& grid, double x_lo, double x_hi);
HypothesisCheck check_h3(const Nonlinearity& nl, const Grid& grid);

/// Variant lower bound f(t,x) x >= r * eta * |x|^r on interval_I x [-delta, delta].
HypothesisCheck check_h2prime(const Nonlinearity& nl, const Grid& grid);

/// Family validity: power form with r > 1, b continuous and positive on
/// interval_I. Passing implies the growth, lower-bound and oddness checks
/// all pass with the derived constants.
HypothesisCheck check_h4(const Nonlinearity& nl, const Grid& grid);

/// Default magnitude range for sampling: [-10 d, 10 d], d = max(delta, 1).
double default_x_range(const Nonlinearity& nl);

} // namespace fracplap
