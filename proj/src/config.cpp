#include "fracplap/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace fracplap {

const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::solve: return "solve";
        case RunMode::multistart: return "multistart";
        case RunMode::verify: return "verify";
        case RunMode::embedding: return "embedding";
        case RunMode::sweep: return "sweep";
    }
    return "?";
}

std::optional<RunMode> mode_from_string(const std::string& s) {
    for (RunMode m : {RunMode::solve, RunMode::multistart, RunMode::verify, RunMode::embedding,
                      RunMode::sweep})
        if (s == to_string(m)) return m;
    return std::nullopt;
}

Nonlinearity NonlinearitySpec::build(const Grid& grid) const {
    Interval I = interval;
    if (I.lo == 0.0 && I.hi == 0.0) I = Interval{grid.T / 16.0, 15.0 * grid.T / 16.0};

    Coefficient b;
    if (b_constant) {
        b = Coefficient::constant(b_value);
    } else {
        b = Coefficient::samples(grid.nodes(), b_samples);
    }
    Nonlinearity nl = Nonlinearity::power(r, std::move(b), I, grid.T, eta, delta);
    nl.family = family == "sign_changing_power" ? NonlinearityFamily::sign_changing_power
                                                : NonlinearityFamily::power_odd;
    if (r1) nl.r1 = *r1;
    if (r2) nl.r2 = *r2;
    return nl;
}

ProblemInstance RunConfig::instance() const {
    const Grid grid = make_grid(T, N);
    return ProblemInstance{alpha, p, T, N, nonlinearity.build(grid)};
}

namespace {

std::string join(const std::vector<std::string>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << "; ";
        os << v[i];
    }
    return os.str();
}

void warn_unknown_keys(const nlohmann::json& j, const std::string& where,
                       const std::set<std::string>& accepted, std::vector<std::string>* warnings) {
    if (!warnings || !j.is_object()) return;
    for (const auto& item : j.items()) {
        if (!accepted.count(item.key())) {
            std::string keys;
            for (const std::string& k : accepted) keys += (keys.empty() ? "" : ", ") + k;
            warnings->push_back("unknown field '" + where + item.key() + "' (accepted: " + keys + ")");
        }
    }
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error("invalid configuration: " + join(errors)), errors_(std::move(errors)) {}

RunConfig parse_config(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file '" + path.string() + "'"});
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    return parse_config_json(j, warnings);
}

RunConfig parse_config_json(const nlohmann::json& j, std::vector<std::string>* warnings) {
    RunConfig cfg;
    std::vector<std::string> errors;

    auto get_num = [&](const nlohmann::json& obj, const char* key, double& out,
                       const std::string& where) {
        if (!obj.contains(key)) return;
        if (!obj[key].is_number()) {
            errors.push_back(where + key + ": expected a number");
            return;
        }
        out = obj[key].get<double>();
    };
    auto get_int = [&](const nlohmann::json& obj, const char* key, int& out,
                       const std::string& where) {
        if (!obj.contains(key)) return;
        if (!obj[key].is_number_integer()) {
            errors.push_back(where + key + ": expected an integer");
            return;
        }
        out = obj[key].get<int>();
    };

    warn_unknown_keys(j, "",
                      {"problem", "solver", "mode", "verify", "sweep", "multistart", "embedding",
                       "output_dir", "seed"},
                      warnings);

    if (j.contains("problem")) {
        const auto& pr = j["problem"];
        warn_unknown_keys(pr, "problem.", {"alpha", "p", "T", "N", "nonlinearity"}, warnings);
        get_num(pr, "alpha", cfg.alpha, "problem.");
        get_num(pr, "p", cfg.p, "problem.");
        get_num(pr, "T", cfg.T, "problem.");
        get_int(pr, "N", cfg.N, "problem.");
        if (pr.contains("nonlinearity")) {
            const auto& nj = pr["nonlinearity"];
            warn_unknown_keys(nj, "problem.nonlinearity.",
                              {"family", "r", "b", "eta", "delta", "interval", "r1", "r2"},
                              warnings);
            NonlinearitySpec& nl = cfg.nonlinearity;
            if (nj.contains("family")) {
                nl.family = nj["family"].get<std::string>();
                if (nl.family != "power_odd" && nl.family != "sign_changing_power")
                    errors.push_back("problem.nonlinearity.family: expected 'power_odd' or "
                                     "'sign_changing_power', got '" + nl.family + "'");
            }
            get_num(nj, "r", nl.r, "problem.nonlinearity.");
            if (nj.contains("b")) {
                const auto& bj = nj["b"];
                const std::string kind = bj.value("kind", "constant");
                if (kind == "constant") {
                    nl.b_constant = true;
                    nl.b_value = bj.value("value", 1.0);
                } else if (kind == "samples") {
                    nl.b_constant = false;
                    if (bj.contains("values") && bj["values"].is_array())
                        nl.b_samples = bj["values"].get<std::vector<double>>();
                    else
                        errors.push_back("problem.nonlinearity.b.values: expected an array");
                } else {
                    errors.push_back("problem.nonlinearity.b.kind: expected 'constant' or 'samples'");
                }
            }
            if (nj.contains("eta")) nl.eta = nj["eta"].get<double>();
            if (nj.contains("delta")) nl.delta = nj["delta"].get<double>();
            if (nj.contains("interval")) {
                const auto& iv = nj["interval"];
                if (iv.is_array() && iv.size() == 2)
                    nl.interval = Interval{iv[0].get<double>(), iv[1].get<double>()};
                else
                    errors.push_back("problem.nonlinearity.interval: expected [lo, hi]");
            }
            if (nj.contains("r1")) nl.r1 = nj["r1"].get<double>();
            if (nj.contains("r2")) nl.r2 = nj["r2"].get<double>();
        }
    }

    if (j.contains("solver")) {
        const auto& sj = j["solver"];
        warn_unknown_keys(sj, "solver.",
                          {"max_iters", "grad_tol", "armijo_c", "backtrack_factor", "initial_step",
                           "dedup_tol"},
                          warnings);
        get_int(sj, "max_iters", cfg.solver.max_iters, "solver.");
        get_num(sj, "grad_tol", cfg.solver.grad_tol, "solver.");
        get_num(sj, "armijo_c", cfg.solver.armijo_c, "solver.");
        get_num(sj, "backtrack_factor", cfg.solver.backtrack_factor, "solver.");
        get_num(sj, "initial_step", cfg.solver.initial_step, "solver.");
        get_num(sj, "dedup_tol", cfg.solver.dedup_tol, "solver.");
    }

    if (j.contains("mode")) {
        const std::string m = j["mode"].get<std::string>();
        if (auto mode = mode_from_string(m))
            cfg.mode = *mode;
        else
            errors.push_back("mode: unknown mode '" + m +
                             "' (accepted: solve, multistart, verify, embedding, sweep)");
    }

    if (j.contains("verify")) {
        const auto& vj = j["verify"];
        warn_unknown_keys(vj, "verify.", {"theorems", "n_required", "energy_margin"}, warnings);
        if (vj.contains("theorems")) {
            cfg.verify.theorems.clear();
            for (const auto& t : vj["theorems"]) {
                const std::string name = t.get<std::string>();
                if (auto id = theorem_from_string(name))
                    cfg.verify.theorems.push_back(*id);
                else
                    errors.push_back("verify.theorems: unknown theorem id '" + name + "'");
            }
        }
        get_int(vj, "n_required", cfg.verify.n_required, "verify.");
        get_num(vj, "energy_margin", cfg.verify.energy_margin, "verify.");
    }

    if (j.contains("multistart")) {
        const auto& mj = j["multistart"];
        warn_unknown_keys(mj, "multistart.", {"n", "sigma"}, warnings);
        get_int(mj, "n", cfg.multistart_n, "multistart.");
        if (mj.contains("sigma") && !mj["sigma"].is_null()) cfg.sigma = mj["sigma"].get<double>();
    }

    if (j.contains("embedding")) {
        const auto& ej = j["embedding"];
        warn_unknown_keys(ej, "embedding.", {"samples"}, warnings);
        get_int(ej, "samples", cfg.embedding_samples, "embedding.");
    }

    if (j.contains("sweep")) {
        const auto& sj = j["sweep"];
        warn_unknown_keys(sj, "sweep.", {"alpha", "p", "r"}, warnings);
        if (sj.contains("alpha")) cfg.sweep.alphas = sj["alpha"].get<std::vector<double>>();
        if (sj.contains("p")) cfg.sweep.ps = sj["p"].get<std::vector<double>>();
        if (sj.contains("r")) cfg.sweep.rs = sj["r"].get<std::vector<double>>();
    }

    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();

    // constraint validation, every violation reported with its field
    if (!(cfg.T > 0.0)) errors.push_back("problem.T: must be positive");
    if (cfg.N < 8) errors.push_back("problem.N: must be >= 8");
    if (!(cfg.p > 1.0)) errors.push_back("problem.p: must exceed 1");
    if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0)
        errors.push_back("problem.alpha: must lie in (0, 1]");
    else if (cfg.p > 1.0 && !(cfg.alpha > 1.0 / cfg.p))
        errors.push_back("problem.alpha: must satisfy alpha > 1/p (got alpha=" +
                         std::to_string(cfg.alpha) + ", 1/p=" + std::to_string(1.0 / cfg.p) + ")");
    if (!(cfg.nonlinearity.r > 1.0))
        errors.push_back("problem.nonlinearity.r: must exceed 1");
    if (cfg.nonlinearity.eta && !(*cfg.nonlinearity.eta > 0.0))
        errors.push_back("problem.nonlinearity.eta: must be positive");
    if (cfg.nonlinearity.delta && !(*cfg.nonlinearity.delta > 0.0))
        errors.push_back("problem.nonlinearity.delta: must be positive");
    const Interval I = cfg.nonlinearity.interval;
    if (!(I.lo == 0.0 && I.hi == 0.0)) {
        if (!(I.lo >= 0.0 && I.hi <= cfg.T && I.lo < I.hi))
            errors.push_back("problem.nonlinearity.interval: must be a nonempty subinterval of [0, T]");
    }
    if (!cfg.nonlinearity.b_constant &&
        cfg.nonlinearity.b_samples.size() != static_cast<size_t>(cfg.N) + 1)
        errors.push_back("problem.nonlinearity.b.values: expected N+1 = " +
                         std::to_string(cfg.N + 1) + " samples, got " +
                         std::to_string(cfg.nonlinearity.b_samples.size()));
    if (cfg.solver.max_iters < 1) errors.push_back("solver.max_iters: must be >= 1");
    if (!(cfg.solver.grad_tol > 0.0)) errors.push_back("solver.grad_tol: must be positive");
    if (!(cfg.solver.armijo_c > 0.0 && cfg.solver.armijo_c < 0.5))
        errors.push_back("solver.armijo_c: must lie in (0, 0.5)");
    if (!(cfg.solver.backtrack_factor > 0.0 && cfg.solver.backtrack_factor < 1.0))
        errors.push_back("solver.backtrack_factor: must lie in (0, 1)");
    if (!(cfg.solver.initial_step > 0.0)) errors.push_back("solver.initial_step: must be positive");
    if (!(cfg.solver.dedup_tol > 0.0)) errors.push_back("solver.dedup_tol: must be positive");
    if (cfg.verify.n_required < 1) errors.push_back("verify.n_required: must be >= 1");
    if (!(cfg.verify.energy_margin > 0.0)) errors.push_back("verify.energy_margin: must be positive");
    if (cfg.mode == RunMode::verify && cfg.verify.theorems.empty())
        errors.push_back("verify.theorems: must not be empty in verify mode");
    if (cfg.multistart_n < 1) errors.push_back("multistart.n: must be >= 1");
    if (cfg.embedding_samples < 1) errors.push_back("embedding.samples: must be >= 1");
    if (cfg.mode == RunMode::sweep && cfg.sweep.alphas.empty() && cfg.sweep.ps.empty() &&
        cfg.sweep.rs.empty())
        errors.push_back("sweep: at least one of alpha, p, r must be a nonempty array in sweep mode");
    if (cfg.output_dir.empty()) errors.push_back("output_dir: must not be empty");

    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

nlohmann::ordered_json config_echo(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json nl;
    nl["family"] = cfg.nonlinearity.family;
    nl["r"] = cfg.nonlinearity.r;
    if (cfg.nonlinearity.b_constant)
        nl["b"] = {{"kind", "constant"}, {"value", cfg.nonlinearity.b_value}};
    else
        nl["b"] = {{"kind", "samples"}, {"values", cfg.nonlinearity.b_samples}};
    if (cfg.nonlinearity.eta) nl["eta"] = *cfg.nonlinearity.eta;
    if (cfg.nonlinearity.delta) nl["delta"] = *cfg.nonlinearity.delta;
    if (!(cfg.nonlinearity.interval.lo == 0.0 && cfg.nonlinearity.interval.hi == 0.0))
        nl["interval"] = {cfg.nonlinearity.interval.lo, cfg.nonlinearity.interval.hi};
    if (cfg.nonlinearity.r1) nl["r1"] = *cfg.nonlinearity.r1;
    if (cfg.nonlinearity.r2) nl["r2"] = *cfg.nonlinearity.r2;

    j["problem"] = {{"alpha", cfg.alpha}, {"p", cfg.p}, {"T", cfg.T}, {"N", cfg.N},
                    {"nonlinearity", nl}};
    j["solver"] = {{"max_iters", cfg.solver.max_iters},
                   {"grad_tol", cfg.solver.grad_tol},
                   {"armijo_c", cfg.solver.armijo_c},
                   {"backtrack_factor", cfg.solver.backtrack_factor},
                   {"initial_step", cfg.solver.initial_step},
                   {"dedup_tol", cfg.solver.dedup_tol}};
    j["mode"] = to_string(cfg.mode);
    nlohmann::ordered_json th = nlohmann::ordered_json::array();
    for (TheoremId id : cfg.verify.theorems) th.push_back(to_string(id));
    j["verify"] = {{"theorems", th},
                   {"n_required", cfg.verify.n_required},
                   {"energy_margin", cfg.verify.energy_margin}};
    nlohmann::ordered_json ms;
    ms["n"] = cfg.multistart_n;
    if (cfg.sigma) ms["sigma"] = *cfg.sigma;
    j["multistart"] = ms;
    j["embedding"] = {{"samples", cfg.embedding_samples}};
    if (!cfg.sweep.alphas.empty() || !cfg.sweep.ps.empty() || !cfg.sweep.rs.empty())
        j["sweep"] = {{"alpha", cfg.sweep.alphas}, {"p", cfg.sweep.ps}, {"r", cfg.sweep.rs}};
    j["output_dir"] = cfg.output_dir;
    j["seed"] = cfg.seed;
    return j;
}

} // namespace fracplap
