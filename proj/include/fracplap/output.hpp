#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "fracplap/config.hpp"
#include "fracplap/solver.hpp"
#include "fracplap/space.hpp"
#include "fracplap/verify.hpp"

namespace fracplap {

/// Full-precision scientific notation used in every CSV cell.
std::string num17(double x);

/// Long-format solution profiles: solution,t,u,Lu with a header row.
void write_solutions_csv(std::ostream& os, const EnergyContext& ctx,
                         std::span<const SolveResult> solutions);

/// Scaling-probe curves and iteration traces:
/// kind,label,x,y,grad_norm (grad_norm empty on probe rows).
void write_curves_csv(std::ostream& os, const ScalingProbe* probe,
                      std::span<const SolveResult> runs);

/// theorem_id,pass,n_solutions,best_energy,worst_grad_norm.
void write_summary_csv(std::ostream& os, std::span<const TheoremReport> reports);

nlohmann::ordered_json to_json(const TheoremReport& rep);
nlohmann::ordered_json to_json(const EmbeddingSurvey& survey);
nlohmann::ordered_json to_json(const CoercivityReport& rep);
nlohmann::ordered_json to_json(const ReductionReport& rep);
nlohmann::ordered_json to_json(const SolveResult& r);

/// Executes one parsed configuration: runs the requested mode, writes
/// report.json / solutions.csv / curves.csv (and summary.csv or sweep.csv
/// where applicable) into cfg.output_dir.
/// Exit status: 0 success/pass, 2 search or theorem failure, 3 refusal.
int run(const RunConfig& cfg, std::ostream& log, bool quiet = false);

} // namespace fracplap
