#include "awb/json_io.hpp"

#include <cmath>
#include <string>

#include "awb/error.hpp"

namespace awb {

namespace {

template <typename T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(Errc::validation_error, std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw Error(Errc::validation_error, std::string("field '") + key + "' has the wrong type");
    }
}

std::size_t positive_size(const json& j, const char* key) {
    const auto v = field<std::int64_t>(j, key);
    if (v <= 0) {
        throw Error(Errc::validation_error, std::string("field '") + key + "' must be positive");
    }
    return static_cast<std::size_t>(v);
}

}  // namespace

double round_pct(double fraction) {
    return std::round(fraction * 1000.0) / 10.0;
}

json metrics_to_json(const MetricsReport& m) {
    return json{
        {"accuracy_pct", round_pct(m.accuracy)},
        {"fp_pct", round_pct(m.fp_ratio)},
        {"fn_pct", round_pct(m.fn_ratio)},
        {"f1_pct", round_pct(m.f1)},
        {"tp", m.confusion.tp},
        {"tn", m.confusion.tn},
        {"fp", m.confusion.fp},
        {"fn", m.confusion.fn},
        {"samples", m.confusion.total()},
        {"runtime_mean_ms", m.runtime.mean_ms},
        {"runtime_max_ms", m.runtime.max_ms},
        {"runtime_p99_ms", m.runtime.p99_ms},
    };
}

json pie_to_json(const PieBreakdown& pie) {
    return json{
        {"inner", {{"correct", pie.inner.correct}, {"incorrect", pie.inner.incorrect}}},
        {"outer", {{"tp", pie.outer.tp}, {"tn", pie.outer.tn}, {"fp", pie.outer.fp}, {"fn", pie.outer.fn}}},
    };
}

json config_to_json(const PostProcessConfig& c) {
    return json{
        {"window", {{"kind", std::string(to_string(c.window.kind))}, {"length", c.window.length}}},
        {"threshold", c.threshold},
    };
}

json summary_to_json(const ModelSummary& s) {
    return json{
        {"model_name", s.model_name},
        {"accuracy", s.accuracy},
        {"analysis_length", s.analysis_length},
        {"test_avg_f1", s.test_avg_f1},
    };
}

json entry_to_json(const ManifestEntry& e) {
    return json{
        {"model_name", e.model_name},
        {"window_size", e.window_size},
        {"dimensionality", e.dimensionality},
        {"reduced_features", e.reduced_features},
        {"binary", e.binary},
        {"test_avg_f1", e.test_avg_f1},
        {"accuracy", e.accuracy},
        {"analysis_length", e.analysis_length},
    };
}

json optimization_to_json(const OptimizationResult& r, const Objective& objective) {
    json obj{{"target", std::string(to_string(objective.target))}};
    obj["accuracy_floor"] = objective.accuracy_floor ? json(*objective.accuracy_floor) : json(nullptr);
    return json{
        {"objective", obj},
        {"best_config", config_to_json(r.best_config)},
        {"best_metrics", metrics_to_json(r.best_metrics)},
        {"evaluated", r.evaluated},
        {"feasible", r.feasible},
    };
}

json error_to_json(std::string_view code, std::string_view message) {
    return json{{"code", std::string(code)}, {"message", std::string(message)}};
}

PostProcessConfig config_from_json(const json& j) {
    const auto window = field<json>(j, "window");
    PostProcessConfig c;
    c.window.kind = parse_window_kind(field<std::string>(window, "kind"));
    c.window.length = positive_size(window, "length");
    c.threshold = field<double>(j, "threshold");
    return c;
}

SearchGrid grid_from_json(const json& j) {
    SearchGrid g;
    for (const auto& k : field<std::vector<std::string>>(j, "kinds")) {
        g.kinds.push_back(parse_window_kind(k));
    }
    for (const auto v : field<std::vector<std::int64_t>>(j, "lengths")) {
        if (v <= 0) {
            throw Error(Errc::invalid_grid, "window lengths must be positive");
        }
        g.lengths.push_back(static_cast<std::size_t>(v));
    }
    g.thresholds = field<std::vector<double>>(j, "thresholds");
    return g;
}

Objective objective_from_json(const json& j) {
    Objective o;
    o.target = parse_objective_target(field<std::string>(j, "target"));
    if (j.contains("accuracy_floor") && !j.at("accuracy_floor").is_null()) {
        o.accuracy_floor = field<double>(j, "accuracy_floor");
    }
    return o;
}

}  // namespace awb
