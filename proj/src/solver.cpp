#include "fracplap/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "fracplap/space.hpp"

namespace fracplap {

namespace {

void validate(const SolveOptions& o) {
    if (o.max_iters < 1 || !(o.grad_tol > 0.0) || !(o.backtrack_factor > 0.0) ||
        o.backtrack_factor >= 1.0 || !(o.initial_step > 0.0) || !(o.dedup_tol > 0.0))
        throw std::invalid_argument("SolveOptions: all fields must be positive (backtrack_factor < 1)");
    if (!(o.armijo_c > 0.0) || o.armijo_c >= 0.5)
        throw std::invalid_argument("SolveOptions: armijo_c must lie in (0, 0.5)");
}

bool should_record(int iter) { return iter < 100 || iter % 50 == 0; }

} // namespace

SolveResult minimize(const EnergyContext& ctx, const GridFunction& u0, const SolveOptions& opts) {
    validate(opts);
    if (!(u0.grid() == ctx.grid))
        throw std::invalid_argument("minimize: grid mismatch");

    const size_t n = static_cast<size_t>(ctx.grid.N) + 1;
    std::vector<double> u(u0.values().begin(), u0.values().end());
    std::vector<double> Lu = ctx.left.apply(u);
    double E = energy_value(ctx, Lu, u);

    std::vector<TraceSample> trace;
    double step = opts.initial_step;
    int iter = 0;
    bool converged = false;
    bool stalled = false;

    for (; iter < opts.max_iters; ++iter) {
        // periodic refresh against drift of the incrementally updated L u
        if (iter > 0 && iter % 1024 == 0) {
            Lu = ctx.left.apply(u);
            E = energy_value(ctx, Lu, u);
        }

        const std::vector<double> g = gradient_from(ctx, Lu, u, ctx.epsilon_reg);
        const double gn = gradient_norm(ctx, g);
        if (should_record(iter)) trace.push_back({iter, E, gn, linf_norm(u)});
        if (gn <= opts.grad_tol) {
            converged = true;
            break;
        }

        double gg = 0.0;
        for (double x : g) gg += x * x;
        const std::vector<double> Lg = ctx.left.apply(g);

        // Armijo backtracking, warm-started from the previous accepted step.
        double tau = std::min(step / opts.backtrack_factor, opts.initial_step * 1e6);
        bool accepted = false;
        std::vector<double> u_new(n), Lu_new(n);
        double E_new = 0.0;
        while (tau > 1e-16) {
            for (size_t i = 0; i < n; ++i) {
                u_new[i] = u[i] - tau * g[i];
                Lu_new[i] = Lu[i] - tau * Lg[i];
            }
            E_new = energy_value(ctx, Lu_new, u_new);
            if (E_new <= E - opts.armijo_c * tau * gg) {
                accepted = true;
                break;
            }
            tau *= opts.backtrack_factor;
        }
        if (!accepted) {
            stalled = true;
            break;
        }
        u.swap(u_new);
        Lu.swap(Lu_new);
        E = E_new;
        step = tau;
    }

    u.front() = 0.0;
    u.back() = 0.0;
    GridFunction uf(ctx.grid, std::move(u));
    const std::vector<double> g0 = gradient(ctx, uf, 0.0);

    SolveResult res{std::move(uf), E, gradient_norm(ctx, g0), iter, converged, stalled, {}, -1};
    trace.push_back({iter, E, res.grad_norm, linf_norm(res.u)});
    res.trace = std::move(trace);
    return res;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("log_spaced: need 0 < lo < hi and count >= 2");
    std::vector<double> s(static_cast<size_t>(count));
    const double step = std::log(hi / lo) / (count - 1);
    for (int k = 0; k < count; ++k) s[static_cast<size_t>(k)] = lo * std::exp(step * k);
    return s;
}

ScalingProbe scaling_probe(const EnergyContext& ctx, const GridFunction& u0,
                           std::span<const double> s_grid) {
    if (linf_norm(u0) == 0.0)
        throw std::invalid_argument("scaling_probe: u0 must be nonzero");
    if (std::abs(linf_norm(u0) - 1.0) > 1e-9)
        throw std::invalid_argument("scaling_probe: u0 must be normalized to ||u0||_inf = 1");
    for (int i = 0; i <= ctx.grid.N; ++i) {
        const double t = ctx.grid.node(i);
        if (u0[i] != 0.0 && (t <= ctx.nl.interval_I.lo || t >= ctx.nl.interval_I.hi))
            throw std::invalid_argument("scaling_probe: u0 must be supported in interval_I");
    }
    if (s_grid.empty())
        throw std::invalid_argument("scaling_probe: empty s grid");

    const std::vector<double> Lu = ctx.left.apply(u0);
    ScalingProbe probe;
    probe.s.assign(s_grid.begin(), s_grid.end());
    probe.energy.resize(probe.s.size());
    std::vector<double> su(Lu.size()), sLu(Lu.size());
    for (size_t k = 0; k < probe.s.size(); ++k) {
        const double s = probe.s[k];
        for (size_t i = 0; i < Lu.size(); ++i) {
            su[i] = s * u0[static_cast<int>(i)];
            sLu[i] = s * Lu[i];
        }
        probe.energy[k] = energy_value(ctx, sLu, su);
    }

    const double delta = ctx.nl.delta.value_or(probe.s.back());
    size_t best = 0;
    bool found_in_range = false;
    for (size_t k = 0; k < probe.s.size(); ++k) {
        if (probe.s[k] <= delta) {
            if (!found_in_range || probe.energy[k] < probe.energy[best]) best = k;
            found_in_range = true;
        }
    }
    if (!found_in_range)
        best = static_cast<size_t>(std::min_element(probe.energy.begin(), probe.energy.end()) -
                                   probe.energy.begin());
    probe.s_star = probe.s[best];
    probe.min_energy = probe.energy[best];
    probe.negative_found = *std::min_element(probe.energy.begin(), probe.energy.end()) < 0.0;
    return probe;
}

namespace {

// Cardinal cubic B-spline on [0, 4], C^2, max 2/3 at the midpoint.
double bspline3(double x) {
    if (x <= 0.0 || x >= 4.0) return 0.0;
    if (x < 1.0) return x * x * x / 6.0;
    if (x < 2.0) {
        const double z = x - 1.0;
        return (-3.0 * z * z * z + 3.0 * z * z + 3.0 * z + 1.0) / 6.0;
    }
    if (x < 3.0) {
        const double z = x - 2.0;
        return (3.0 * z * z * z - 6.0 * z * z + 4.0) / 6.0;
    }
    const double z = x - 3.0;
    return (1.0 - z) * (1.0 - z) * (1.0 - z) / 6.0;
}

GridFunction bump_on(const Grid& grid, double lo, double hi) {
    return GridFunction::sample(grid, [lo, hi](double t) {
        if (t <= lo || t >= hi) return 0.0;
        return bspline3(4.0 * (t - lo) / (hi - lo));
    });
}

} // namespace

std::vector<GridFunction> genus_bumps(const EnergyContext& ctx, int n) {
    if (n < 1)
        throw std::invalid_argument("genus_bumps: n must be >= 1");
    const Interval I = ctx.nl.interval_I;
    const double cell = I.length() / n;
    const double pad = 0.1 * cell;
    if (cell - 2.0 * pad < 4.0 * ctx.grid.h)
        throw std::invalid_argument("genus_bumps: interval_I too short to host " + std::to_string(n) +
                                    " disjoint bumps of >= 4 grid cells");
    std::vector<GridFunction> bumps;
    bumps.reserve(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double lo = I.lo + j * cell + pad;
        const double hi = I.lo + (j + 1) * cell - pad;
        GridFunction u = bump_on(ctx.grid, lo, hi);
        const double norm = lp_norm(ctx.left.apply(u), ctx.grid, ctx.p);
        if (norm == 0.0)
            throw std::invalid_argument("genus_bumps: bump collapsed to zero on this grid");
        bumps.push_back(u.scaled(1.0 / norm));
    }
    return bumps;
}

std::vector<GridFunction> genus_seeds(const EnergyContext& ctx, int n, double sigma) {
    const std::vector<GridFunction> bumps = genus_bumps(ctx, n);
    std::vector<GridFunction> seeds;
    seeds.reserve(static_cast<size_t>(2 * n + n * (n - 1) / 2));
    for (const GridFunction& b : bumps) seeds.push_back(b.scaled(sigma));
    for (const GridFunction& b : bumps) seeds.push_back(b.scaled(-sigma));
    const double lam = sigma / std::pow(2.0, 1.0 / ctx.p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            seeds.push_back(bumps[static_cast<size_t>(i)].plus(bumps[static_cast<size_t>(j)]).scaled(lam));
    return seeds;
}

double default_sigma(const EnergyContext& ctx, int n) {
    const std::vector<GridFunction> bumps = genus_bumps(ctx, n);
    const GridFunction& first = bumps.front();
    const double peak = linf_norm(first);
    const GridFunction probe_dir = first.scaled(1.0 / peak);

    const double d = std::max(ctx.nl.delta.value_or(1.0), 1.0);
    const std::vector<double> s_grid = log_spaced(1e-6 * d, 10.0 * d, 200);
    const ScalingProbe probe = scaling_probe(ctx, probe_dir, s_grid);

    // convert s* from the peak normalization back to ||L u||_Lp = 1
    double sigma = probe.s_star / peak;
    const EmbeddingConstants consts = embedding_constants(ctx.alpha, ctx.p, ctx.grid.T);
    if (ctx.nl.delta && consts.c_inf) sigma = std::min(sigma, *ctx.nl.delta / *consts.c_inf);
    return sigma;
}

double relative_linf_distance(const GridFunction& a, const GridFunction& b) {
    double diff = 0.0;
    for (int i = 0; i <= a.grid().N; ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    const double scale = std::max(linf_norm(a), linf_norm(b));
    if (scale == 0.0) return 0.0;
    return diff / scale;
}

bool is_nontrivial(const SolveResult& r, double dedup_tol) {
    const double m = linf_norm(r.u);
    return m > 10.0 * dedup_tol * std::max(1.0, m);
}

namespace {

int thread_budget(size_t jobs) {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("FRACPLAP_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) cap = std::min(cap, v);
    }
    return std::min<int>(cap, static_cast<int>(jobs));
}

} // namespace

std::vector<SolveResult> multistart(const EnergyContext& ctx, const std::vector<GridFunction>& seeds,
                                    const SolveOptions& opts) {
    if (seeds.empty())
        throw std::invalid_argument("multistart: seeds must be nonempty");

    std::vector<SolveResult> runs(seeds.size(), SolveResult{GridFunction::zero(ctx.grid)});
    const int workers = thread_budget(seeds.size());
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&]() {
        for (;;) {
            const size_t k = next.fetch_add(1);
            if (k >= seeds.size()) return;
            try {
                SolveResult r = minimize(ctx, seeds[k], opts);
                r.seed_index = static_cast<int>(k);
                runs[k] = std::move(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    const bool odd = ctx.nl.family != NonlinearityFamily::custom;
    std::vector<SolveResult> kept;
    for (SolveResult& r : runs) {
        if (!r.converged) continue;
        bool duplicate = false;
        for (const SolveResult& k : kept) {
            if (relative_linf_distance(r.u, k.u) < opts.dedup_tol ||
                (odd && relative_linf_distance(r.u, k.u.negated()) < opts.dedup_tol)) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) kept.push_back(std::move(r));
    }
    std::stable_sort(kept.begin(), kept.end(), [](const SolveResult& a, const SolveResult& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.seed_index < b.seed_index;
    });
    return kept;
}

PsDiagnostic ps_diagnostic(const std::vector<TraceSample>& trace) {
    if (trace.empty())
        throw std::invalid_argument("ps_diagnostic: empty trace");
    PsDiagnostic d;
    for (const TraceSample& s : trace)
        if (s.u_linf > 1e6) d.iterates_bounded = false;

    bool oscillating = false;
    for (size_t k = 1; k < trace.size(); ++k)
        if (trace[k].energy > trace[k - 1].energy + 1e-12 * (1.0 + std::abs(trace[k - 1].energy)))
            oscillating = true;

    bool plateau = false;
    if (trace.size() >= 5) {
        plateau = true;
        const double ref = trace.back().energy;
        for (size_t k = trace.size() - 5; k < trace.size(); ++k)
            if (std::abs(trace[k].energy - ref) > 1e-14 * (1.0 + std::abs(ref))) plateau = false;
        plateau = plateau && trace.back().grad_norm > 0.0;
    }
    d.grad_to_zero_but_no_convergence = oscillating || plateau;
    return d;
}

} // namespace fracplap
