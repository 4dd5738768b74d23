#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracplap/problem.hpp"
#include "fracplap/solver.hpp"
#include "fracplap/verify.hpp"

namespace fracplap {

enum class RunMode { solve, multistart, verify, embedding, sweep };

const char* to_string(RunMode m);
std::optional<RunMode> mode_from_string(const std::string& s);

/// Nonlinearity as written in the config file; build() materializes it
/// for a concrete grid.
struct NonlinearitySpec {
    std::string family = "power_odd";
    double r = 1.5;
    bool b_constant = true;
    double b_value = 1.0;
    std::vector<double> b_samples;
    std::optional<double> eta;
    std::optional<double> delta;
    Interval interval{0.0, 0.0}; // (0,0) means "use (T/16, 15T/16)"
    std::optional<double> r1, r2;

    Nonlinearity build(const Grid& grid) const;
};

struct VerifySpec {
    std::vector<TheoremId> theorems{TheoremId::T1_1, TheoremId::T1_2};
    int n_required = 3;
    double energy_margin = 1e-4;
};

struct SweepSpec {
    std::vector<double> alphas, ps, rs;
};

struct RunConfig {
    double alpha = 0.75;
    double p = 2.0;
    double T = 1.0;
    int N = 256;
    NonlinearitySpec nonlinearity;
    SolveOptions solver;
    RunMode mode = RunMode::solve;
    VerifySpec verify;
    SweepSpec sweep;
    int multistart_n = 3;
    std::optional<double> sigma; // multistart seed scale override
    int embedding_samples = 1000;
    std::string output_dir = "out";
    std::uint64_t seed = 0;

    ProblemInstance instance() const;
};

/// All field-level validation failures from one parse.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

/// Parses and validates; unknown keys produce warnings, constraint
/// violations throw ConfigError listing every offending field.
RunConfig parse_config(const std::filesystem::path& path,
                       std::vector<std::string>* warnings = nullptr);
RunConfig parse_config_json(const nlohmann::json& j, std::vector<std::string>* warnings = nullptr);

/// Full effective configuration, suitable for re-parsing.
nlohmann::ordered_json config_echo(const RunConfig& cfg);

} // namespace fracplap
