#include "awb/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "awb/error.hpp"

namespace awb {

namespace {

void check_threshold(double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw Error(Errc::threshold_out_of_range,
                    "threshold must lie in [0, 1], got " + std::to_string(threshold));
    }
}

void check_window_fits(const WindowSpec& window, std::size_t series_length) {
    if (window.length == 0) {
        throw Error(Errc::zero_length, "window length must be >= 1");
    }
    if (window.length > series_length) {
        throw Error(Errc::window_too_long, "window length " + std::to_string(window.length) +
                                               " exceeds series length " + std::to_string(series_length));
    }
}

}  // namespace

void PostProcessConfig::validate(std::size_t series_length) const {
    check_threshold(threshold);
    check_window_fits(window, series_length);
}

std::vector<double> rolling_weighted_mean(std::span<const Label> predicted, const WindowSpec& window) {
    const std::size_t n = predicted.size();
    check_window_fits(window, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (predicted[i] != kNormal && predicted[i] != kAnomaly) {
            throw Error(Errc::invalid_label, "sample " + std::to_string(i) + ": smoothing needs binary labels");
        }
    }

    const std::size_t w = window.length;
    std::vector<double> out(n);
    for (std::size_t t = 0; t + 1 < w; ++t) {
        out[t] = static_cast<double>(predicted[t]);
    }

    if (window.kind == WindowKind::rectangular) {
        std::size_t ones = 0;
        for (std::size_t t = 0; t < n; ++t) {
            ones += static_cast<std::size_t>(predicted[t]);
            if (t >= w) {
                ones -= static_cast<std::size_t>(predicted[t - w]);
            }
            if (t + 1 >= w) {
                out[t] = static_cast<double>(ones) / static_cast<double>(w);
            }
        }
        return out;
    }

    const auto weights = generate_window(window);
    const double mass = std::accumulate(weights.begin(), weights.end(), 0.0);

    // Inputs are 0/1, so each anomaly sample scatters the window weights onto
    // the outputs whose trailing block contains it. Zeros contribute nothing.
    std::vector<double> acc(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (predicted[i] == kNormal) {
            continue;
        }
        // Sample i sits at offset k of the block ending at t = i + (w-1-k).
        const std::size_t t_first = std::max(i, w - 1);
        const std::size_t t_last = std::min(i + w - 1, n - 1);
        for (std::size_t t = t_first; t <= t_last; ++t) {
            acc[t] += weights[w - 1 - (t - i)];
        }
    }
    for (std::size_t t = w - 1; t < n; ++t) {
        out[t] = std::clamp(acc[t] / mass, 0.0, 1.0);
    }
    return out;
}

std::vector<Label> apply_threshold(std::span<const double> smoothed, double threshold) {
    check_threshold(threshold);
    std::vector<Label> out(smoothed.size());
    std::transform(smoothed.begin(), smoothed.end(), out.begin(),
                   [threshold](double v) { return v > threshold ? kAnomaly : kNormal; });
    return out;
}

ProcessedSeries postprocess(const AnalysisSeries& series, const PostProcessConfig& config) {
    config.validate(series.length());
    ProcessedSeries result;
    result.smoothed = rolling_weighted_mean(series.predicted(), config.window);
    result.decided = apply_threshold(result.smoothed, config.threshold);
    result.config = config;
    result.warmup_len = config.window.length - 1;
    return result;
}

}  // namespace awb
