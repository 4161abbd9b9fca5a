#pragma once

#include <span>
#include <vector>

#include "awb/series.hpp"
#include "awb/window.hpp"

namespace awb {

struct PostProcessConfig {
    WindowSpec window;
    double threshold = 0.5;

    /// Throws threshold_out_of_range, zero_length or window_too_long.
    void validate(std::size_t series_length) const;

    friend bool operator==(const PostProcessConfig&, const PostProcessConfig&) = default;
};

struct ProcessedSeries {
    std::vector<double> smoothed;
    std::vector<Label> decided;
    PostProcessConfig config;
    std::size_t warmup_len = 0;
};

/// Causal weighted moving average of a 0/1 prediction stream.
///
/// For t >= W-1 the output is the weighted mean of the trailing block
/// predicted[t-W+1 .. t], normalised by the total window mass. The first W-1
/// samples (warm-up) pass the raw prediction through unchanged.
std::vector<double> rolling_weighted_mean(std::span<const Label> predicted, const WindowSpec& window);

/// 1 where smoothed[t] is strictly above `threshold`, else 0.
std::vector<Label> apply_threshold(std::span<const double> smoothed, double threshold);

ProcessedSeries postprocess(const AnalysisSeries& series, const PostProcessConfig& config);

}  // namespace awb
