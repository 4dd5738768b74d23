#pragma once

#include <span>
#include <vector>

#include "fracplap/energy.hpp"
#include "fracplap/grid.hpp"

namespace fracplap {

struct SolveOptions {
    int max_iters = 5000;
    double grad_tol = 1e-6;        // on the h-weighted gradient norm
    double armijo_c = 1e-4;        // sufficient-decrease constant, in (0, 0.5)
    double backtrack_factor = 0.5;
    double initial_step = 1.0;
    double dedup_tol = 1e-2;       // relative L-inf distance for multistart dedup
};

struct TraceSample {
    int iter;
    double energy;
    double grad_norm; // working norm (with the context's regularization)
    double u_linf;
};

struct SolveResult {
    GridFunction u;
    double energy = 0.0;
    double grad_norm = 0.0; // re-evaluated with eps = 0
    int iters = 0;
    bool converged = false;
    bool stalled = false; // line search found no step above 1e-16
    std::vector<TraceSample> trace;
    int seed_index = -1;
};

/// Armijo-backtracking gradient descent on the energy. Accepted steps
/// strictly decrease the energy; iteration stops when the working
/// gradient norm reaches grad_tol, on line-search stall, or at max_iters.
SolveResult minimize(const EnergyContext& ctx, const GridFunction& u0, const SolveOptions& opts);

struct ScalingProbe {
    std::vector<double> s;
    std::vector<double> energy;
    bool negative_found = false;
    double s_star = 0.0;     // argmin over the portion s <= delta (global if none)
    double min_energy = 0.0; // value at s_star
};

/// Energy along the ray s -> I(s u0) for a direction supported in
/// interval_I with ||u0||_inf = 1.
ScalingProbe scaling_probe(const EnergyContext& ctx, const GridFunction& u0,
                           std::span<const double> s_grid);

/// Log-spaced grid helper for probes and scans.
std::vector<double> log_spaced(double lo, double hi, int count);

/// n disjoint cubic B-spline bumps inside interval_I, each normalized to
/// ||L u_i||_Lp = 1 and scaled by sigma, followed by their sign flips and
/// the pairwise combinations sigma (u_i + u_j) / 2^{1/p}:
/// 2n + n(n-1)/2 starting points in total.
std::vector<GridFunction> genus_seeds(const EnergyContext& ctx, int n, double sigma);

/// The n underlying normalized bumps only (no flips or combinations).
std::vector<GridFunction> genus_bumps(const EnergyContext& ctx, int n);

/// Probe-derived default scale for genus_seeds: s* of the scaling probe on
/// the first bump, converted to the ||L u||_Lp = 1 normalization and
/// clamped to (0, delta / C_inf].
double default_sigma(const EnergyContext& ctx, int n);

/// Runs minimize from every seed (optionally in parallel, capped by the
/// FRACPLAP_THREADS environment variable), keeps converged results, and
/// deduplicates by relative L-inf distance; for odd nonlinearities a
/// result matching the negation of a kept one is folded into that pair.
/// Output is sorted by energy ascending, ties by seed index.
std::vector<SolveResult> multistart(const EnergyContext& ctx, const std::vector<GridFunction>& seeds,
                                    const SolveOptions& opts);

/// Relative L-inf distance used by the deduplication.
double relative_linf_distance(const GridFunction& a, const GridFunction& b);

/// Not within 10 * dedup_tol of the zero function (on the max(1, .) scale).
bool is_nontrivial(const SolveResult& r, double dedup_tol);

struct PsDiagnostic {
    bool iterates_bounded = true;
    bool grad_to_zero_but_no_convergence = false;
};

/// Run-health heuristics over a solve trace: unbounded iterates
/// (L-inf above 1e6) and stalled/oscillating energy.
PsDiagnostic ps_diagnostic(const std::vector<TraceSample>& trace);

} // namespace fracplap
