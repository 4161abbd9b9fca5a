#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "awb/series.hpp"

namespace awb {

struct ConfusionBreakdown {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + tn + fp + fn; }

    friend bool operator==(const ConfusionBreakdown&, const ConfusionBreakdown&) = default;
};

struct RuntimeStats {
    double mean_ms = 0.0;
    double max_ms = 0.0;
    double p99_ms = 0.0;

    friend bool operator==(const RuntimeStats&, const RuntimeStats&) = default;
};

/// Accuracy and the two error ratios are fractions of ALL samples, so
/// accuracy + fp_ratio + fn_ratio == 1.
struct MetricsReport {
    double accuracy = 0.0;
    double fp_ratio = 0.0;
    double fn_ratio = 0.0;
    double f1 = 0.0;
    ConfusionBreakdown confusion;
    RuntimeStats runtime;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Nested breakdown for the double pie chart, all values in percent.
struct PieBreakdown {
    struct Inner {
        double correct = 0.0;
        double incorrect = 0.0;
    } inner;
    struct Outer {
        double tp = 0.0;
        double tn = 0.0;
        double fp = 0.0;
        double fn = 0.0;
    } outer;
};

ConfusionBreakdown confusion(std::span<const Label> decided, std::span<const Label> ground_truth);

/// Mean, max and nearest-rank p99 (the ceil(0.99 N)-th smallest value).
/// An empty input yields all zeros.
RuntimeStats runtime_stats(std::span<const double> runtime_ms);

/// F1 is 2tp / (2tp + fp + fn), and 1.0 when there are no positives at all.
MetricsReport report(const ConfusionBreakdown& counts, std::span<const double> runtime_ms);

/// Running fraction of samples where decided matches ground truth.
std::vector<double> cma_accuracy(std::span<const Label> decided, std::span<const Label> ground_truth);

PieBreakdown pie_breakdown(const ConfusionBreakdown& counts);

/// Convenience: confusion + report over a whole series with the given decisions.
MetricsReport evaluate(const AnalysisSeries& series, std::span<const Label> decided);

}  // namespace awb
