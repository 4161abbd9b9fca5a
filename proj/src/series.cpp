#include "awb/series.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "awb/error.hpp"

namespace awb {

using json = nlohmann::json;

namespace {

bool valid_label(Label value, LabelMode mode) {
    if (value < 0) {
        return false;
    }
    return mode == LabelMode::multiclass || value <= kAnomaly;
}

std::string at_line(std::size_t line_no, const std::string& what) {
    return "line " + std::to_string(line_no) + ": " + what;
}

AnalysisHeader parse_header(const std::string& line) {
    json doc;
    try {
        doc = json::parse(line);
    } catch (const json::exception& e) {
        throw Error(Errc::malformed_record, at_line(1, std::string("header is not JSON: ") + e.what()));
    }
    if (!doc.is_object() || !doc.contains("version") || !doc.contains("mode") || !doc.contains("length")) {
        throw Error(Errc::malformed_record, at_line(1, "header must carry version, mode and length"));
    }
    AnalysisHeader header;
    try {
        header.version = doc.at("version").get<int>();
        const auto mode = doc.at("mode").get<std::string>();
        if (mode == "binary") {
            header.mode = LabelMode::binary;
        } else if (mode == "multiclass") {
            header.mode = LabelMode::multiclass;
        } else {
            throw Error(Errc::malformed_record, at_line(1, "unknown mode '" + mode + "'"));
        }
        const auto length = doc.at("length").get<std::int64_t>();
        if (length < 0) {
            throw Error(Errc::malformed_record, at_line(1, "negative length"));
        }
        header.length = static_cast<std::size_t>(length);
    } catch (const json::exception& e) {
        throw Error(Errc::malformed_record, at_line(1, e.what()));
    }
    if (header.version != 1) {
        throw Error(Errc::malformed_record, at_line(1, "unsupported version " + std::to_string(header.version)));
    }
    return header;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::io_error, "cannot open " + path.string());
    }
    return in;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

std::string_view to_string(LabelMode mode) noexcept {
    return mode == LabelMode::binary ? "binary" : "multiclass";
}

AnalysisSeries::AnalysisSeries(std::vector<Label> predicted,
                               std::vector<Label> ground_truth,
                               std::vector<double> runtime_ms,
                               LabelMode mode)
    : predicted_(std::move(predicted)),
      ground_truth_(std::move(ground_truth)),
      runtime_ms_(std::move(runtime_ms)),
      mode_(mode) {
    if (predicted_.empty()) {
        throw Error(Errc::empty_series, "analysis series must have at least one sample");
    }
    if (ground_truth_.size() != predicted_.size() || runtime_ms_.size() != predicted_.size()) {
        throw Error(Errc::length_mismatch,
                    "predicted, ground_truth and runtime_ms must be aligned (" +
                        std::to_string(predicted_.size()) + "/" + std::to_string(ground_truth_.size()) + "/" +
                        std::to_string(runtime_ms_.size()) + ")");
    }
    for (std::size_t i = 0; i < predicted_.size(); ++i) {
        if (!valid_label(predicted_[i], mode_) || !valid_label(ground_truth_[i], mode_)) {
            throw Error(Errc::invalid_label, "sample " + std::to_string(i) + ": label outside the " +
                                                 std::string(to_string(mode_)) + " label set");
        }
        if (!(runtime_ms_[i] >= 0.0) || !std::isfinite(runtime_ms_[i])) {
            throw Error(Errc::validation_error, "sample " + std::to_string(i) + ": runtime must be finite and >= 0");
        }
    }
}

AnalysisHeader read_analysis_header(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(Errc::empty_series, path.string() + " is empty");
    }
    return parse_header(line);
}

AnalysisSeries load_analysis(const std::filesystem::path& path) {
    auto in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(Errc::empty_series, path.string() + " is empty");
    }
    const AnalysisHeader header = parse_header(line);

    std::vector<Label> predicted;
    std::vector<Label> ground_truth;
    std::vector<double> runtime;
    predicted.reserve(header.length);
    ground_truth.reserve(header.length);
    runtime.reserve(header.length);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) {
            continue;
        }
        const std::size_t index = predicted.size();
        Label pred = 0;
        Label gt = 0;
        double rt = 0.0;
        try {
            const auto rec = json::parse(line);
            if (!rec.is_object()) {
                throw Error(Errc::malformed_record, at_line(line_no, "record must be an object"));
            }
            const auto i = rec.at("i").get<std::int64_t>();
            if (i < 0 || static_cast<std::size_t>(i) != index) {
                throw Error(Errc::malformed_record, at_line(line_no, "expected index " + std::to_string(index) +
                                                                         ", got " + std::to_string(i)));
            }
            pred = rec.at("pred").get<Label>();
            gt = rec.at("gt").get<Label>();
            rt = rec.at("rt_ms").get<double>();
        } catch (const json::exception& e) {
            throw Error(Errc::malformed_record, at_line(line_no, e.what()));
        }
        if (!valid_label(pred, header.mode) || !valid_label(gt, header.mode)) {
            throw Error(Errc::invalid_label, at_line(line_no, "label outside the " +
                                                                  std::string(to_string(header.mode)) +
                                                                  " label set"));
        }
        if (!(rt >= 0.0) || !std::isfinite(rt)) {
            throw Error(Errc::malformed_record, at_line(line_no, "rt_ms must be finite and >= 0"));
        }
        predicted.push_back(pred);
        ground_truth.push_back(gt);
        runtime.push_back(rt);
    }

    if (predicted.size() != header.length) {
        if (header.length == 0 && predicted.empty()) {
            throw Error(Errc::empty_series, path.string() + " holds no records");
        }
        throw Error(Errc::length_mismatch, "header declares " + std::to_string(header.length) + " records, found " +
                                               std::to_string(predicted.size()));
    }
    if (predicted.empty()) {
        throw Error(Errc::empty_series, path.string() + " holds no records");
    }
    return AnalysisSeries(std::move(predicted), std::move(ground_truth), std::move(runtime), header.mode);
}

AnalysisSeries load_binary_analysis(const std::filesystem::path& path) {
    auto series = load_analysis(path);
    if (series.mode() == LabelMode::binary) {
        return series;
    }
    std::set<Label> anomaly_classes{kAnomaly};
    for (auto labels : {series.predicted(), series.ground_truth()}) {
        for (Label v : labels) {
            if (v != kNormal) {
                anomaly_classes.insert(v);
            }
        }
    }
    return binarize(series, anomaly_classes);
}

void write_analysis(const AnalysisSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw Error(Errc::io_error, "cannot write " + path.string());
    }
    out << json{{"version", 1}, {"mode", std::string(to_string(series.mode()))}, {"length", series.length()}}.dump() << '\n';
    const auto pred = series.predicted();
    const auto gt = series.ground_truth();
    const auto rt = series.runtime_ms();
    for (std::size_t i = 0; i < series.length(); ++i) {
        out << json{{"i", i}, {"pred", pred[i]}, {"gt", gt[i]}, {"rt_ms", rt[i]}}.dump() << '\n';
    }
    if (!out) {
        throw Error(Errc::io_error, "failed writing " + path.string());
    }
}

AnalysisSeries binarize(const AnalysisSeries& series, const std::set<Label>& anomaly_classes) {
    if (anomaly_classes.empty()) {
        throw Error(Errc::empty_anomaly_set, "binarize needs at least one anomaly class");
    }
    auto map = [&](std::span<const Label> labels) {
        std::vector<Label> out;
        out.reserve(labels.size());
        for (Label v : labels) {
            out.push_back(anomaly_classes.contains(v) ? kAnomaly : kNormal);
        }
        return out;
    };
    const auto rt = series.runtime_ms();
    return AnalysisSeries(map(series.predicted()), map(series.ground_truth()),
                          std::vector<double>(rt.begin(), rt.end()), LabelMode::binary);
}

}  // namespace awb
