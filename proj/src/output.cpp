#include "fracplap/output.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace fracplap {

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", x);
    return buf;
}

void write_solutions_csv(std::ostream& os, const EnergyContext& ctx,
                         std::span<const SolveResult> solutions) {
    os << "solution,t,u,Lu\n";
    for (size_t s = 0; s < solutions.size(); ++s) {
        const GridFunction& u = solutions[s].u;
        const std::vector<double> Lu = ctx.left.apply(u);
        for (int i = 0; i <= ctx.grid.N; ++i)
            os << s << ',' << num17(ctx.grid.node(i)) << ',' << num17(u[i]) << ','
               << num17(Lu[static_cast<size_t>(i)]) << '\n';
    }
}

void write_curves_csv(std::ostream& os, const ScalingProbe* probe,
                      std::span<const SolveResult> runs) {
    os << "kind,label,x,y,grad_norm\n";
    if (probe)
        for (size_t k = 0; k < probe->s.size(); ++k)
            os << "scaling_probe,probe," << num17(probe->s[k]) << ',' << num17(probe->energy[k])
               << ",\n";
    for (const SolveResult& r : runs)
        for (const TraceSample& t : r.trace)
            os << "trace," << r.seed_index << ',' << t.iter << ',' << num17(t.energy) << ','
               << num17(t.grad_norm) << '\n';
}

void write_summary_csv(std::ostream& os, std::span<const TheoremReport> reports) {
    os << "theorem_id,pass,n_solutions,best_energy,worst_grad_norm\n";
    for (const TheoremReport& r : reports)
        os << to_string(r.id) << ',' << (r.pass ? 1 : 0) << ',' << r.solutions.size() << ','
           << num17(r.best_energy) << ',' << num17(r.worst_grad_norm) << '\n';
}

nlohmann::ordered_json to_json(const SolveResult& r) {
    nlohmann::ordered_json j;
    j["seed_index"] = r.seed_index;
    j["energy"] = r.energy;
    j["grad_norm"] = r.grad_norm;
    j["iters"] = r.iters;
    j["converged"] = r.converged;
    j["stalled"] = r.stalled;
    j["u_linf"] = linf_norm(r.u);
    return j;
}

nlohmann::ordered_json to_json(const TheoremReport& rep) {
    nlohmann::ordered_json j;
    j["theorem_id"] = to_string(rep.id);
    j["pass"] = rep.pass;
    j["refused"] = rep.refused;
    if (rep.refused) {
        j["refused_hypothesis"] = rep.refused_hypothesis;
        if (rep.refusal_witness) {
            j["refusal_witness"] = {{"t", rep.refusal_witness->t},
                                    {"x", rep.refusal_witness->x},
                                    {"lhs", rep.refusal_witness->lhs},
                                    {"rhs", rep.refusal_witness->rhs}};
        }
        return j;
    }
    j["n_required"] = rep.n_required;
    j["pairs_found"] = rep.pairs_found;
    j["energy_margin"] = rep.energy_margin;
    j["best_energy"] = rep.best_energy;
    j["worst_grad_norm"] = rep.worst_grad_norm;
    j["min_pair_separation"] = rep.min_pair_separation;
    j["max_pair_energy_gap"] = rep.max_pair_energy_gap;
    j["empirical_epsilon"] = rep.empirical_epsilon;
    j["sigma"] = rep.sigma;
    if (rep.id == TheoremId::T1_1 || rep.id == TheoremId::C3_5) j["scan_min"] = rep.scan_min;
    nlohmann::ordered_json sols = nlohmann::ordered_json::array();
    for (const SolveResult& s : rep.solutions) sols.push_back(to_json(s));
    j["solutions"] = sols;
    return j;
}

nlohmann::ordered_json to_json(const EmbeddingSurvey& s) {
    nlohmann::ordered_json j;
    j["alpha"] = s.alpha;
    j["p"] = s.p;
    j["T"] = s.T;
    j["N"] = s.N;
    j["c_p"] = s.c_p;
    j["c_inf"] = s.c_inf;
    j["worst_ratio_p"] = s.worst_ratio_p;
    j["worst_ratio_inf"] = s.worst_ratio_inf;
    j["samples"] = s.samples;
    j["pass"] = s.pass;
    return j;
}

nlohmann::ordered_json to_json(const CoercivityReport& r) {
    nlohmann::ordered_json j;
    j["pass"] = r.pass;
    j["rays"] = r.rays;
    j["worst_slack"] = r.worst_slack;
    j["bound_holds"] = r.bound_holds;
    j["increasing_tail"] = r.increasing_tail;
    return j;
}

nlohmann::ordered_json to_json(const ReductionReport& r) {
    nlohmann::ordered_json j;
    j["refused"] = r.refused;
    j["pass"] = r.pass;
    j["stencil_max_dev"] = r.stencil_max_dev;
    j["solve_error"] = r.solve_error;
    j["error_bound"] = r.error_bound;
    j["residual_max"] = r.residual_max;
    return j;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << content;
}

struct Artifacts {
    nlohmann::ordered_json results;
    std::vector<SolveResult> solutions;
    std::optional<ScalingProbe> probe;
    std::vector<TheoremReport> theorem_reports;
    int exit_code = 0;
};

Artifacts run_solve(const RunConfig& cfg, const EnergyContext& ctx) {
    Artifacts art;
    const GridFunction bump = genus_bumps(ctx, 1).front();
    const GridFunction dir = bump.scaled(1.0 / linf_norm(bump));
    const double d = std::max(ctx.nl.delta.value_or(1.0), 1.0);
    art.probe = scaling_probe(ctx, dir, log_spaced(1e-6 * d, 10.0 * d, 200));

    SolveResult run = minimize(ctx, dir.scaled(art.probe->s_star), cfg.solver);
    run.seed_index = 0;
    const PsDiagnostic diag = ps_diagnostic(run.trace);
    art.exit_code = run.converged ? 0 : 2;
    art.results["solve"] = to_json(run);
    art.results["solve"]["ps_diagnostic"] = {
        {"iterates_bounded", diag.iterates_bounded},
        {"grad_to_zero_but_no_convergence", diag.grad_to_zero_but_no_convergence}};
    art.results["scaling_probe"] = {{"s_star", art.probe->s_star},
                                    {"min_energy", art.probe->min_energy},
                                    {"negative_found", art.probe->negative_found}};
    art.solutions.push_back(std::move(run));
    return art;
}

Artifacts run_multistart(const RunConfig& cfg, const EnergyContext& ctx) {
    Artifacts art;
    const double sigma = cfg.sigma ? *cfg.sigma : default_sigma(ctx, cfg.multistart_n);
    const std::vector<GridFunction> seeds = genus_seeds(ctx, cfg.multistart_n, sigma);
    std::vector<SolveResult> kept = multistart(ctx, seeds, cfg.solver);

    art.results["sigma"] = sigma;
    art.results["n_seeds"] = seeds.size();
    art.results["n_distinct"] = kept.size();
    nlohmann::ordered_json sols = nlohmann::ordered_json::array();
    for (const SolveResult& r : kept) sols.push_back(to_json(r));
    art.results["solutions"] = sols;
    art.exit_code = kept.empty() ? 2 : 0;
    art.solutions = std::move(kept);
    return art;
}

Artifacts run_verify(const RunConfig& cfg, const EnergyContext& ctx) {
    Artifacts art;
    const ProblemInstance inst = cfg.instance();
    nlohmann::ordered_json reports = nlohmann::ordered_json::array();
    bool any_refused = false, any_failed = false;

    for (TheoremId id : cfg.verify.theorems) {
        switch (id) {
            case TheoremId::T1_1: {
                TheoremReport rep = verify_thm_1_1(inst, cfg.solver, cfg.verify.energy_margin);
                reports.push_back(to_json(rep));
                any_refused |= rep.refused;
                any_failed |= !rep.refused && !rep.pass;
                if (!art.probe && !rep.refused) art.probe = rep.probe;
                for (const SolveResult& s : rep.solutions) art.solutions.push_back(s);
                art.theorem_reports.push_back(std::move(rep));
                break;
            }
            case TheoremId::C3_5: {
                TheoremReport rep = verify_cor_3_5(inst, cfg.solver, cfg.verify.energy_margin);
                reports.push_back(to_json(rep));
                any_refused |= rep.refused;
                any_failed |= !rep.refused && !rep.pass;
                for (const SolveResult& s : rep.solutions) art.solutions.push_back(s);
                art.theorem_reports.push_back(std::move(rep));
                break;
            }
            case TheoremId::T1_2:
            case TheoremId::C3_6: {
                TheoremReport rep =
                    id == TheoremId::T1_2
                        ? verify_thm_1_2(inst, cfg.solver, cfg.verify.n_required,
                                         cfg.verify.energy_margin)
                        : verify_cor_3_6(inst, cfg.solver, cfg.verify.n_required,
                                         cfg.verify.energy_margin);
                reports.push_back(to_json(rep));
                any_refused |= rep.refused;
                any_failed |= !rep.refused && !rep.pass;
                for (const SolveResult& s : rep.solutions) art.solutions.push_back(s);
                art.theorem_reports.push_back(std::move(rep));
                break;
            }
            case TheoremId::embedding: {
                const EmbeddingSurvey survey = survey_embedding(
                    cfg.alpha, cfg.p, cfg.T, cfg.N, cfg.embedding_samples, cfg.seed);
                nlohmann::ordered_json j = to_json(survey);
                j["theorem_id"] = "embedding";
                reports.push_back(j);
                any_failed |= !survey.pass;
                TheoremReport rep;
                rep.id = TheoremId::embedding;
                rep.pass = survey.pass;
                art.theorem_reports.push_back(rep);
                break;
            }
            case TheoremId::coercivity: {
                const std::vector<GridFunction> dirs =
                    random_fourier_directions(ctx.grid, 20, cfg.seed);
                const CoercivityReport crep = verify_coercivity(ctx, dirs, 100.0);
                nlohmann::ordered_json j = to_json(crep);
                j["theorem_id"] = "coercivity";
                reports.push_back(j);
                any_failed |= !crep.pass;
                TheoremReport rep;
                rep.id = TheoremId::coercivity;
                rep.pass = crep.pass;
                art.theorem_reports.push_back(rep);
                break;
            }
            case TheoremId::reduction: {
                const ReductionReport rrep = verify_reduction_p2_alpha1(inst, cfg.solver);
                nlohmann::ordered_json j = to_json(rrep);
                j["theorem_id"] = "reduction";
                reports.push_back(j);
                any_refused |= rrep.refused;
                any_failed |= !rrep.refused && !rrep.pass;
                TheoremReport rep;
                rep.id = TheoremId::reduction;
                rep.pass = rrep.pass;
                rep.refused = rrep.refused;
                art.theorem_reports.push_back(rep);
                break;
            }
        }
    }
    art.results["theorems"] = reports;
    art.exit_code = any_refused ? 3 : (any_failed ? 2 : 0);
    return art;
}

Artifacts run_embedding(const RunConfig& cfg) {
    Artifacts art;
    const EmbeddingSurvey survey =
        survey_embedding(cfg.alpha, cfg.p, cfg.T, cfg.N, cfg.embedding_samples, cfg.seed);
    art.results["embedding"] = to_json(survey);
    art.exit_code = survey.pass ? 0 : 2;
    return art;
}

Artifacts run_sweep(const RunConfig& cfg, std::ostream& log, bool quiet,
                    const std::filesystem::path& dir) {
    Artifacts art;
    std::vector<double> alphas = cfg.sweep.alphas.empty() ? std::vector<double>{cfg.alpha}
                                                          : cfg.sweep.alphas;
    std::vector<double> ps = cfg.sweep.ps.empty() ? std::vector<double>{cfg.p} : cfg.sweep.ps;
    std::vector<double> rs = cfg.sweep.rs.empty() ? std::vector<double>{cfg.nonlinearity.r}
                                                  : cfg.sweep.rs;

    std::string csv = "alpha,p,r,status,energy,grad_norm,iters\n";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (double a : alphas)
        for (double p : ps)
            for (double r : rs) {
                nlohmann::ordered_json row;
                row["alpha"] = a;
                row["p"] = p;
                row["r"] = r;
                if (!(a > 1.0 / p) || a > 1.0 || !(r > 1.0 && r < p)) {
                    row["status"] = "skipped";
                    csv += num17(a) + "," + num17(p) + "," + num17(r) + ",skipped,,,\n";
                    rows.push_back(row);
                    continue;
                }
                RunConfig point = cfg;
                point.alpha = a;
                point.p = p;
                point.nonlinearity.r = r;
                point.nonlinearity.r1.reset();
                point.nonlinearity.r2.reset();
                const EnergyContext ctx = make_context(point.instance());
                const Artifacts sa = run_solve(point, ctx);
                const SolveResult& run = sa.solutions.front();
                row["status"] = run.converged ? "converged" : "not_converged";
                row["energy"] = run.energy;
                row["grad_norm"] = run.grad_norm;
                row["iters"] = run.iters;
                csv += num17(a) + "," + num17(p) + "," + num17(r) + "," +
                       (run.converged ? "converged" : "not_converged") + "," + num17(run.energy) +
                       "," + num17(run.grad_norm) + "," + std::to_string(run.iters) + "\n";
                rows.push_back(row);
                if (!quiet)
                    log << "sweep point alpha=" << a << " p=" << p << " r=" << r
                        << " energy=" << run.energy << "\n";
            }
    write_file(dir / "sweep.csv", csv);
    art.results["sweep"] = rows;
    return art;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& log, bool quiet) {
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);

    Artifacts art;
    if (cfg.mode == RunMode::sweep) {
        art = run_sweep(cfg, log, quiet, dir);
    } else if (cfg.mode == RunMode::embedding) {
        art = run_embedding(cfg);
    } else {
        const EnergyContext ctx = make_context(cfg.instance());
        switch (cfg.mode) {
            case RunMode::solve: art = run_solve(cfg, ctx); break;
            case RunMode::multistart: art = run_multistart(cfg, ctx); break;
            case RunMode::verify: art = run_verify(cfg, ctx); break;
            default: break;
        }
        std::ostringstream sol, curves;
        write_solutions_csv(sol, ctx, art.solutions);
        write_curves_csv(curves, art.probe ? &*art.probe : nullptr, art.solutions);
        write_file(dir / "solutions.csv", sol.str());
        write_file(dir / "curves.csv", curves.str());
        if (cfg.mode == RunMode::verify) {
            std::ostringstream summary;
            write_summary_csv(summary, art.theorem_reports);
            write_file(dir / "summary.csv", summary.str());
        }
    }

    nlohmann::ordered_json report;
    report["config_echo"] = config_echo(cfg);
    report["mode"] = to_string(cfg.mode);
    report["results"] = art.results;
    report["exit_code"] = art.exit_code;
    write_file(dir / "report.json", report.dump(2) + "\n");

    if (!quiet)
        log << "mode=" << to_string(cfg.mode) << " exit=" << art.exit_code << " artifacts in "
            << dir.string() << "\n";
    return art.exit_code;
}

} // namespace fracplap
