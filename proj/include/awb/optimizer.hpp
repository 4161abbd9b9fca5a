#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "awb/metrics.hpp"
#include "awb/postprocess.hpp"
#include "awb/series.hpp"
#include "awb/window.hpp"

namespace awb {

enum class ObjectiveTarget { max_accuracy, min_fp_ratio, min_fn_ratio };

std::string_view to_string(ObjectiveTarget target) noexcept;
ObjectiveTarget parse_objective_target(std::string_view name);

struct Objective {
    ObjectiveTarget target = ObjectiveTarget::max_accuracy;
    /// Candidates need accuracy >= floor. A floor above 1 is accepted and
    /// simply rules out every candidate.
    std::optional<double> accuracy_floor;
};

struct SearchGrid {
    std::vector<WindowKind> kinds;
    std::vector<std::size_t> lengths;
    std::vector<double> thresholds;

    std::size_t size() const noexcept { return kinds.size() * lengths.size() * thresholds.size(); }

    /// Throws invalid_grid for empty axes, duplicate kinds, non-ascending
    /// lengths or thresholds and thresholds outside [0, 1]; window_too_long
    /// when a length exceeds the series.
    void validate(std::size_t series_length) const;
};

struct GridPoint {
    PostProcessConfig config;
    MetricsReport metrics;
    bool feasible = false;
};

struct OptimizationResult {
    PostProcessConfig best_config;
    MetricsReport best_metrics;
    std::size_t evaluated = 0;
    std::size_t feasible = 0;
    /// Every grid point in kinds x lengths x thresholds order.
    std::vector<GridPoint> audit;
    std::size_t best_index = 0;
};

struct SearchOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Called with (points scored so far, total points); may be invoked from
    /// worker threads.
    std::function<void(std::size_t, std::size_t)> on_progress;
};

/// Scores every grid point with postprocess + metrics and returns the best
/// feasible one. Ranking: the objective's target first, then higher accuracy,
/// shorter window, lower threshold, window-kind name ascending. The result
/// does not depend on thread count or evaluation order.
OptimizationResult grid_search(const AnalysisSeries& series,
                               const SearchGrid& grid,
                               const Objective& objective,
                               const SearchOptions& options = {});

}  // namespace awb
