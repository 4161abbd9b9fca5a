#pragma once

#include <json.hpp>

#include "awb/metrics.hpp"
#include "awb/optimizer.hpp"
#include "awb/pool.hpp"
#include "awb/postprocess.hpp"

// JSON mapping shared by the CLI and the HTTP service. Both front ends must
// serialise through these functions so their metric fields agree byte for byte.
namespace awb {

using json = nlohmann::json;

/// Percentages rounded to one decimal place, plus raw counts and runtime stats.
json metrics_to_json(const MetricsReport& m);
json pie_to_json(const PieBreakdown& pie);
json config_to_json(const PostProcessConfig& c);
json summary_to_json(const ModelSummary& s);
json entry_to_json(const ManifestEntry& e);
json optimization_to_json(const OptimizationResult& r, const Objective& objective);
json error_to_json(std::string_view code, std::string_view message);

/// Accepts {"window": {"kind", "length"}, "threshold"}.
PostProcessConfig config_from_json(const json& j);
SearchGrid grid_from_json(const json& j);
Objective objective_from_json(const json& j);

double round_pct(double fraction);

}  // namespace awb
