#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace awb {

/// Integer class label. In binary mode 0 is normal and 1 is anomaly.
using Label = std::int32_t;

inline constexpr Label kNormal = 0;
inline constexpr Label kAnomaly = 1;

enum class LabelMode { binary, multiclass };

std::string_view to_string(LabelMode mode) noexcept;

/// Per-sample results of running one model over a test sequence: the
/// predicted label, the ground-truth label and the inference time of every
/// sample. Immutable once constructed; the constructor enforces alignment,
/// non-empty length, non-negative runtimes and, in binary mode, labels in
/// {0, 1}.
class AnalysisSeries {
public:
    AnalysisSeries(std::vector<Label> predicted,
                   std::vector<Label> ground_truth,
                   std::vector<double> runtime_ms,
                   LabelMode mode = LabelMode::binary);

    std::span<const Label> predicted() const noexcept { return predicted_; }
    std::span<const Label> ground_truth() const noexcept { return ground_truth_; }
    std::span<const double> runtime_ms() const noexcept { return runtime_ms_; }
    std::size_t length() const noexcept { return predicted_.size(); }
    LabelMode mode() const noexcept { return mode_; }

    friend bool operator==(const AnalysisSeries&, const AnalysisSeries&) = default;

private:
    std::vector<Label> predicted_;
    std::vector<Label> ground_truth_;
    std::vector<double> runtime_ms_;
    LabelMode mode_;
};

struct AnalysisHeader {
    int version = 1;
    LabelMode mode = LabelMode::binary;
    std::size_t length = 0;
};

/// Parses only the header line of an analysis-result file.
AnalysisHeader read_analysis_header(const std::filesystem::path& path);

/// Reads a line-delimited analysis-result file (".dtaz.jsonl").
AnalysisSeries load_analysis(const std::filesystem::path& path);

/// load_analysis, then for multiclass files binarize with every non-zero
/// class counted as an anomaly.
AnalysisSeries load_binary_analysis(const std::filesystem::path& path);

void write_analysis(const AnalysisSeries& series, const std::filesystem::path& path);

/// Maps every label in `anomaly_classes` to 1 and all others to 0, for both
/// predicted and ground-truth sequences. The result is in binary mode.
AnalysisSeries binarize(const AnalysisSeries& series, const std::set<Label>& anomaly_classes);

}  // namespace awb
