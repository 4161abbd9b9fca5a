#include "awb/metrics.hpp"

#include <algorithm>
#include <string>

#include "awb/error.hpp"

namespace awb {

namespace {

void check_pair(std::span<const Label> decided, std::span<const Label> ground_truth) {
    if (decided.empty() || ground_truth.empty()) {
        throw Error(Errc::empty_input, "label sequences must be non-empty");
    }
    if (decided.size() != ground_truth.size()) {
        throw Error(Errc::length_mismatch, "decided has " + std::to_string(decided.size()) +
                                               " labels, ground truth has " + std::to_string(ground_truth.size()));
    }
}

double ratio(std::size_t part, std::size_t total) {
    return static_cast<double>(part) / static_cast<double>(total);
}

}  // namespace

ConfusionBreakdown confusion(std::span<const Label> decided, std::span<const Label> ground_truth) {
    check_pair(decided, ground_truth);
    ConfusionBreakdown c;
    for (std::size_t i = 0; i < decided.size(); ++i) {
        const Label d = decided[i];
        const Label g = ground_truth[i];
        if ((d != kNormal && d != kAnomaly) || (g != kNormal && g != kAnomaly)) {
            throw Error(Errc::invalid_label, "sample " + std::to_string(i) + ": confusion needs binary labels");
        }
        if (d == kAnomaly) {
            (g == kAnomaly ? c.tp : c.fp) += 1;
        } else {
            (g == kAnomaly ? c.fn : c.tn) += 1;
        }
    }
    return c;
}

RuntimeStats runtime_stats(std::span<const double> runtime_ms) {
    RuntimeStats stats;
    if (runtime_ms.empty()) {
        return stats;
    }
    double sum = 0.0;
    for (double v : runtime_ms) {
        sum += v;
        stats.max_ms = std::max(stats.max_ms, v);
    }
    stats.mean_ms = std::min(sum / static_cast<double>(runtime_ms.size()), stats.max_ms);

    const std::size_t n = runtime_ms.size();
    const std::size_t rank = (99 * n + 99) / 100;  // ceil(0.99 n), 1-indexed
    std::vector<double> sorted(runtime_ms.begin(), runtime_ms.end());
    auto nth = sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1);
    std::nth_element(sorted.begin(), nth, sorted.end());
    stats.p99_ms = *nth;
    return stats;
}

MetricsReport report(const ConfusionBreakdown& counts, std::span<const double> runtime_ms) {
    const std::size_t n = counts.total();
    if (n == 0) {
        throw Error(Errc::empty_input, "confusion counts are all zero");
    }
    MetricsReport r;
    r.confusion = counts;
    r.accuracy = ratio(counts.tp + counts.tn, n);
    r.fp_ratio = ratio(counts.fp, n);
    r.fn_ratio = ratio(counts.fn, n);
    const std::size_t f1_denominator = 2 * counts.tp + counts.fp + counts.fn;
    r.f1 = f1_denominator == 0 ? 1.0 : ratio(2 * counts.tp, f1_denominator);
    r.runtime = runtime_stats(runtime_ms);
    return r;
}

std::vector<double> cma_accuracy(std::span<const Label> decided, std::span<const Label> ground_truth) {
    check_pair(decided, ground_truth);
    std::vector<double> out(decided.size());
    std::size_t matches = 0;
    for (std::size_t t = 0; t < decided.size(); ++t) {
        matches += decided[t] == ground_truth[t] ? 1 : 0;
        out[t] = ratio(matches, t + 1);
    }
    return out;
}

PieBreakdown pie_breakdown(const ConfusionBreakdown& counts) {
    const std::size_t n = counts.total();
    if (n == 0) {
        throw Error(Errc::empty_input, "confusion counts are all zero");
    }
    auto pct = [n](std::size_t part) { return 100.0 * ratio(part, n); };
    PieBreakdown pie;
    pie.inner.correct = pct(counts.tp + counts.tn);
    pie.inner.incorrect = pct(counts.fp + counts.fn);
    pie.outer.tp = pct(counts.tp);
    pie.outer.tn = pct(counts.tn);
    pie.outer.fp = pct(counts.fp);
    pie.outer.fn = pct(counts.fn);
    return pie;
}

MetricsReport evaluate(const AnalysisSeries& series, std::span<const Label> decided) {
    return report(confusion(decided, series.ground_truth()), series.runtime_ms());
}

}  // namespace awb
