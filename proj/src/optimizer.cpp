#include "awb/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "awb/error.hpp"

namespace awb {

namespace {

// Objective score in sample counts; larger is better.
long long target_score(ObjectiveTarget target, const ConfusionBreakdown& c) {
    switch (target) {
        case ObjectiveTarget::max_accuracy:
            return static_cast<long long>(c.tp + c.tn);
        case ObjectiveTarget::min_fp_ratio:
            return -static_cast<long long>(c.fp);
        case ObjectiveTarget::min_fn_ratio:
            return -static_cast<long long>(c.fn);
    }
    return 0;
}

bool ranks_before(const GridPoint& a, const GridPoint& b, ObjectiveTarget target) {
    const auto sa = target_score(target, a.metrics.confusion);
    const auto sb = target_score(target, b.metrics.confusion);
    if (sa != sb) {
        return sa > sb;
    }
    const auto correct_a = a.metrics.confusion.tp + a.metrics.confusion.tn;
    const auto correct_b = b.metrics.confusion.tp + b.metrics.confusion.tn;
    if (correct_a != correct_b) {
        return correct_a > correct_b;
    }
    if (a.config.window.length != b.config.window.length) {
        return a.config.window.length < b.config.window.length;
    }
    if (a.config.threshold != b.config.threshold) {
        return a.config.threshold < b.config.threshold;
    }
    return to_string(a.config.window.kind) < to_string(b.config.window.kind);
}

}  // namespace

std::string_view to_string(ObjectiveTarget target) noexcept {
    switch (target) {
        case ObjectiveTarget::max_accuracy: return "max_accuracy";
        case ObjectiveTarget::min_fp_ratio: return "min_fp_ratio";
        case ObjectiveTarget::min_fn_ratio: return "min_fn_ratio";
    }
    return "unknown";
}

ObjectiveTarget parse_objective_target(std::string_view name) {
    for (auto t : {ObjectiveTarget::max_accuracy, ObjectiveTarget::min_fp_ratio, ObjectiveTarget::min_fn_ratio}) {
        if (to_string(t) == name) {
            return t;
        }
    }
    throw Error(Errc::validation_error, "unknown objective '" + std::string(name) +
                                            "' (expected max_accuracy, min_fp_ratio or min_fn_ratio)");
}

void SearchGrid::validate(std::size_t series_length) const {
    if (kinds.empty() || lengths.empty() || thresholds.empty()) {
        throw Error(Errc::invalid_grid, "grid axes must all be non-empty");
    }
    if (std::set<WindowKind>(kinds.begin(), kinds.end()).size() != kinds.size()) {
        throw Error(Errc::invalid_grid, "window kinds must not repeat");
    }
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (lengths[i] == 0) {
            throw Error(Errc::invalid_grid, "window lengths must be positive");
        }
        if (i > 0 && lengths[i] <= lengths[i - 1]) {
            throw Error(Errc::invalid_grid, "window lengths must be strictly ascending");
        }
    }
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] >= 0.0 && thresholds[i] <= 1.0)) {
            throw Error(Errc::invalid_grid, "thresholds must lie in [0, 1]");
        }
        if (i > 0 && thresholds[i] <= thresholds[i - 1]) {
            throw Error(Errc::invalid_grid, "thresholds must be strictly ascending");
        }
    }
    if (lengths.back() > series_length) {
        throw Error(Errc::window_too_long, "window length " + std::to_string(lengths.back()) +
                                               " exceeds series length " + std::to_string(series_length));
    }
}

OptimizationResult grid_search(const AnalysisSeries& series,
                               const SearchGrid& grid,
                               const Objective& objective,
                               const SearchOptions& options) {
    grid.validate(series.length());
    if (objective.accuracy_floor && std::isnan(*objective.accuracy_floor)) {
        throw Error(Errc::validation_error, "accuracy_floor must be a number");
    }

    const std::size_t total = grid.size();
    const std::size_t per_window = grid.thresholds.size();
    const std::size_t n_windows = grid.kinds.size() * grid.lengths.size();
    const RuntimeStats runtime = runtime_stats(series.runtime_ms());

    OptimizationResult result;
    result.audit.resize(total);

    std::atomic<std::size_t> next_window{0};
    std::atomic<std::size_t> done{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;

    // One work unit per (kind, length): smooth once, then sweep thresholds.
    auto score_all = [&]() {
        for (std::size_t w = next_window.fetch_add(1); w < n_windows; w = next_window.fetch_add(1)) {
            const WindowSpec window{grid.kinds[w / grid.lengths.size()], grid.lengths[w % grid.lengths.size()]};
            const auto smoothed = rolling_weighted_mean(series.predicted(), window);
            for (std::size_t t = 0; t < per_window; ++t) {
                GridPoint& point = result.audit[w * per_window + t];
                point.config = PostProcessConfig{window, grid.thresholds[t]};
                const auto decided = apply_threshold(smoothed, point.config.threshold);
                point.metrics = report(confusion(decided, series.ground_truth()), {});
                point.metrics.runtime = runtime;
                point.feasible = !objective.accuracy_floor || point.metrics.accuracy >= *objective.accuracy_floor;
            }
            const auto so_far = done.fetch_add(per_window) + per_window;
            if (options.on_progress) {
                options.on_progress(so_far, total);
            }
        }
    };
    auto worker = [&]() {
        try {
            score_all();
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next_window.store(n_windows);
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_windows));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    result.evaluated = total;
    const GridPoint* best = nullptr;
    for (std::size_t i = 0; i < total; ++i) {
        const GridPoint& p = result.audit[i];
        if (!p.feasible) {
            continue;
        }
        ++result.feasible;
        if (best == nullptr || ranks_before(p, *best, objective.target)) {
            best = &p;
            result.best_index = i;
        }
    }
    if (best == nullptr) {
        throw Error(Errc::no_feasible_config,
                    "no grid point reaches accuracy_floor " + std::to_string(objective.accuracy_floor.value_or(0.0)));
    }
    result.best_config = best->config;
    result.best_metrics = best->metrics;
    return result;
}

}  // namespace awb
