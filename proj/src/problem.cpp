#include "fracplap/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracplap {

const char* to_string(NonlinearityFamily f) {
    switch (f) {
        case NonlinearityFamily::power_odd: return "power_odd";
        case NonlinearityFamily::sign_changing_power: return "sign_changing_power";
        case NonlinearityFamily::custom: return "custom";
    }
    return "?";
}

Coefficient Coefficient::constant(double c) {
    Coefficient out;
    out.constant_ = c;
    return out;
}

Coefficient Coefficient::samples(std::vector<double> t, std::vector<double> v) {
    if (t.size() != v.size() || t.size() < 2)
        throw std::invalid_argument("Coefficient::samples: need matching arrays of length >= 2");
    for (size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw std::invalid_argument("Coefficient::samples: abscissae must increase");
    Coefficient out;
    out.t_ = std::move(t);
    out.v_ = std::move(v);
    return out;
}

double Coefficient::operator()(double t) const {
    if (t_.empty()) return constant_;
    if (t <= t_.front()) return v_.front();
    if (t >= t_.back()) return v_.back();
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const size_t j = static_cast<size_t>(it - t_.begin());
    const double w = (t - t_[j - 1]) / (t_[j] - t_[j - 1]);
    return (1.0 - w) * v_[j - 1] + w * v_[j];
}

Nonlinearity Nonlinearity::power(double r, Coefficient b, Interval I, double T,
                                 std::optional<double> eta, std::optional<double> delta) {
    if (!(r > 1.0))
        throw std::invalid_argument("Nonlinearity::power: r must exceed 1");
    if (!(I.lo >= 0.0 && I.hi <= T && I.lo < I.hi))
        throw std::invalid_argument("Nonlinearity::power: interval must be a nonempty subinterval of [0, T]");
    Nonlinearity nl;
    nl.family = NonlinearityFamily::power_odd;
    nl.r = r;
    nl.b = std::move(b);
    nl.eta = eta;
    nl.delta = delta;
    nl.interval_I = I;
    nl.r1 = r;
    nl.r2 = r;
    nl.domain_T = T;
    return nl;
}

Nonlinearity Nonlinearity::custom(std::function<double(double, double)> f, Interval I, double T) {
    Nonlinearity nl;
    nl.family = NonlinearityFamily::custom;
    nl.custom_f = std::move(f);
    nl.interval_I = I;
    nl.domain_T = T;
    return nl;
}

Nonlinearity Nonlinearity::custom(std::function<double(double, double)> f,
                                  std::function<double(double, double)> F, Interval I, double T) {
    Nonlinearity nl = custom(std::move(f), I, T);
    nl.custom_F = std::move(F);
    return nl;
}

double Nonlinearity::f(double t, double x) const {
    if (t < 0.0 || t > domain_T)
        throw std::invalid_argument("Nonlinearity::f: t outside [0, T]");
    if (family == NonlinearityFamily::custom) return custom_f(t, x);
    if (x == 0.0) return 0.0; // limit value, r > 1
    return r * b(t) * std::pow(std::abs(x), r - 2.0) * x;
}

namespace {

// Adaptive Simpson quadrature, absolute tolerance, used for the primitive
// of custom nonlinearities.
double simpson(const std::function<double(double)>& g, double a, double m, double b,
               double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& g, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = simpson(g, a, lm, m, fa, flm, fm);
    const double right = simpson(g, m, rm, b, fm, frm, fb);
    const double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol) return left + right + err;
    if (depth <= 0)
        throw std::runtime_error("Nonlinearity::F: quadrature failed to converge");
    return adapt(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_quadrature(const std::function<double(double)>& g, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = g(a), fm = g(m), fb = g(b);
    return adapt(g, a, b, fa, fm, fb, simpson(g, a, m, b, fa, fm, fb), tol, 48);
}

} // namespace

double Nonlinearity::F(double t, double x) const {
    if (t < 0.0 || t > domain_T)
        throw std::invalid_argument("Nonlinearity::F: t outside [0, T]");
    if (family != NonlinearityFamily::custom) {
        const double ax = std::abs(x);
        if (r == 1.5) return b(t) * ax * std::sqrt(ax); // hot path in the energy loops
        return b(t) * std::pow(ax, r);
    }
    if (custom_F) return custom_F(t, x);
    if (x == 0.0) return 0.0;
    return adaptive_quadrature([&](double s) { return custom_f(t, s); }, 0.0, x, 1e-10);
}

double Nonlinearity::envelope_a(double t) const {
    if (has_explicit_a) return a(t);
    return std::abs(b(t));
}

double default_x_range(const Nonlinearity& nl) {
    return 10.0 * std::max(nl.delta.value_or(1.0), 1.0);
}

namespace {

constexpr double kSlack = 1e-10;
constexpr int kMagnitudes = 64;

std::vector<double> log_magnitudes(double lo, double hi) {
    std::vector<double> mags;
    mags.reserve(kMagnitudes);
    const double ratio = std::log(hi / lo) / (kMagnitudes - 1);
    for (int k = 0; k < kMagnitudes; ++k) mags.push_back(lo * std::exp(ratio * k));
    return mags;
}

// Generic sampled inequality lhs(t,x) <= rhs(t,x) + slack; records the
// worst violation as the witness.
template <class Lhs, class Rhs>
HypothesisCheck sampled_inequality(const std::string& name, std::span<const double> ts,
                                   std::span<const double> mags, const Lhs& lhs, const Rhs& rhs) {
    HypothesisCheck chk;
    chk.name = name;
    chk.pass = true;
    double worst = 0.0;
    for (double t : ts) {
        for (double m : mags) {
            for (double x : {m, -m}) {
                const double l = lhs(t, x);
                const double r = rhs(t, x);
                ++chk.samples;
                if (l > r + kSlack && l - r > worst) {
                    worst = l - r;
                    chk.pass = false;
                    chk.witness = Witness{t, x, l, r};
                }
            }
        }
    }
    return chk;
}

std::vector<double> nodes_in(const Grid& grid, const Interval& I) {
    std::vector<double> ts;
    for (int i = 0; i <= grid.N; ++i) {
        const double t = grid.node(i);
        if (t > I.lo && t < I.hi) ts.push_back(t);
    }
    if (ts.empty()) ts.push_back(0.5 * (I.lo + I.hi));
    return ts;
}

} // namespace

HypothesisCheck check_h1(const Nonlinearity& nl, const Grid& grid, double x_lo, double x_hi) {
    if (nl.family == NonlinearityFamily::custom && !nl.has_explicit_a)
        throw std::invalid_argument("check_h1: envelope a(t) not configured");
    if (!(nl.r1 > 1.0))
        throw std::invalid_argument("check_h1: r1 must exceed 1");
    const std::vector<double> ts = grid.nodes();
    const std::vector<double> mags = log_magnitudes(x_lo, x_hi);
    return sampled_inequality(
        "H1", ts, mags, [&](double t, double x) { return std::abs(nl.f(t, x)); },
        [&](double t, double x) { return nl.r1 * nl.envelope_a(t) * std::pow(std::abs(x), nl.r1 - 1.0); });
}

HypothesisCheck check_h1(const Nonlinearity& nl, const Grid& grid) {
    const double X = default_x_range(nl);
    return check_h1(nl, grid, 1e-6 * X, X);
}

HypothesisCheck check_h2(const Nonlinearity& nl, const Grid& grid) {
    if (!nl.eta || !nl.delta)
        throw std::invalid_argument("check_h2: eta and delta must be configured");
    if (!(nl.interval_I.length() > 0.0))
        throw std::invalid_argument("check_h2: interval_I must be nonempty");
    const std::vector<double> ts = nodes_in(grid, nl.interval_I);
    const std::vector<double> mags = log_magnitudes(1e-6 * *nl.delta, *nl.delta);
    return sampled_inequality(
        "H2", ts, mags,
        [&](double t, double x) { return *nl.eta * std::pow(std::abs(x), nl.r2); },
        [&](double t, double x) { return nl.F(t, x); });
}

HypothesisCheck check_h3(const Nonlinearity& nl, const Grid& grid, double x_lo, double x_hi) {
    const std::vector<double> ts = grid.nodes();
    const std::vector<double> mags = log_magnitudes(x_lo, x_hi);
    HypothesisCheck chk;
    chk.name = "H3";
    chk.pass = true;
    double worst = 0.0;
    for (double t : ts) {
        for (double m : mags) {
            for (double x : {m, -m, 0.0}) {
                const double resid = std::abs(nl.f(t, x) + nl.f(t, -x));
                ++chk.samples;
                if (resid > kSlack && resid > worst) {
                    worst = resid;
                    chk.pass = false;
                    chk.witness = Witness{t, x, nl.f(t, x), -nl.f(t, -x)};
                }
            }
        }
    }
    return chk;
}

HypothesisCheck check_h3(const Nonlinearity& nl, const Grid& grid) {
    const double X = default_x_range(nl);
    return check_h3(nl, grid, 1e-6 * X, X);
}

HypothesisCheck check_h2prime(const Nonlinearity& nl, const Grid& grid) {
    if (!nl.eta || !nl.delta)
        throw std::invalid_argument("check_h2prime: eta and delta must be configured");
    const std::vector<double> ts = nodes_in(grid, nl.interval_I);
    const std::vector<double> mags = log_magnitudes(1e-6 * *nl.delta, *nl.delta);
    return sampled_inequality(
        "H2'", ts, mags,
        [&](double t, double x) { return nl.r * *nl.eta * std::pow(std::abs(x), nl.r); },
        [&](double t, double x) { return nl.f(t, x) * x; });
}

HypothesisCheck check_h4(const Nonlinearity& nl, const Grid& grid) {
    HypothesisCheck chk;
    chk.name = "H4";
    if (nl.family == NonlinearityFamily::custom) {
        chk.pass = false;
        return chk;
    }
    if (!(nl.r > 1.0)) {
        chk.pass = false;
        return chk;
    }
    chk.pass = true;
    for (double t : nodes_in(grid, nl.interval_I)) {
        ++chk.samples;
        const double bt = nl.b(t);
        if (!(bt > 0.0)) {
            chk.pass = false;
            chk.witness = Witness{t, 0.0, bt, 0.0};
            break;
        }
    }
    return chk;
}

} // namespace fracplap
