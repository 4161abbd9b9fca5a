#include "awb/pool.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "awb/error.hpp"
#include "awb/series.hpp"

namespace awb {

using json = nlohmann::json;

namespace {

ManifestEntry parse_entry(const json& item, std::size_t position, const std::filesystem::path& base) {
    const std::string where = "models[" + std::to_string(position) + "]";
    if (!item.is_object()) {
        throw Error(Errc::malformed_manifest, where + " is not an object");
    }
    ManifestEntry e;
    std::string relative_path;
    std::int64_t length = 0;
    try {
        e.model_name = item.at("model_name").get<std::string>();
        e.window_size = item.at("window_size").get<int>();
        e.dimensionality = item.at("dimensionality").get<int>();
        e.reduced_features = item.at("reduced_features").get<bool>();
        e.binary = item.at("binary").get<bool>();
        e.test_avg_f1 = item.at("test_avg_f1").get<double>();
        e.accuracy = item.at("accuracy").get<double>();
        relative_path = item.at("analysis_path").get<std::string>();
        length = item.at("analysis_length").get<std::int64_t>();
    } catch (const json::exception& ex) {
        throw Error(Errc::malformed_manifest, where + ": " + ex.what());
    }
    if (e.model_name.empty()) {
        throw Error(Errc::malformed_manifest, where + ": model_name is empty");
    }
    if (e.window_size <= 0 || e.dimensionality <= 0 || length <= 0) {
        throw Error(Errc::malformed_manifest,
                    where + " (" + e.model_name + "): window_size, dimensionality and analysis_length must be positive");
    }
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(e.test_avg_f1) || !unit(e.accuracy)) {
        throw Error(Errc::malformed_manifest, where + " (" + e.model_name + "): test_avg_f1 and accuracy must be in [0, 1]");
    }
    e.analysis_length = static_cast<std::size_t>(length);
    e.analysis_path = base / relative_path;
    return e;
}

void check_analysis_file(const ManifestEntry& e) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(e.analysis_path, ec)) {
        throw Error(Errc::dangling_analysis_path,
                    e.model_name + ": analysis file " + e.analysis_path.string() + " does not exist");
    }
    AnalysisHeader header;
    try {
        header = read_analysis_header(e.analysis_path);
    } catch (const Error& ex) {
        throw Error(Errc::malformed_manifest, e.model_name + ": " + ex.what());
    }
    if (header.length != e.analysis_length) {
        throw Error(Errc::malformed_manifest, e.model_name + ": analysis_length " + std::to_string(e.analysis_length) +
                                                  " disagrees with file header length " +
                                                  std::to_string(header.length));
    }
}

}  // namespace

bool PoolQuery::matches(const ManifestEntry& entry) const noexcept {
    return (!window_size || *window_size == entry.window_size) &&
           (!dimensionality || *dimensionality == entry.dimensionality) &&
           (!reduced_features || *reduced_features == entry.reduced_features) &&
           (!binary || *binary == entry.binary);
}

std::vector<ManifestEntry> index_pool(const std::filesystem::path& dir) {
    const auto manifest_path = dir / kManifestFileName;
    std::ifstream in(manifest_path);
    if (!in) {
        throw Error(Errc::missing_manifest, "no " + std::string(kManifestFileName) + " in " + dir.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& ex) {
        throw Error(Errc::malformed_manifest, manifest_path.string() + ": " + ex.what());
    }
    if (!doc.is_object() || !doc.contains("models") || !doc["models"].is_array()) {
        throw Error(Errc::malformed_manifest, manifest_path.string() + ": expected {\"version\", \"models\": [...]}");
    }
    if (doc.value("version", 0) != 1) {
        throw Error(Errc::malformed_manifest, manifest_path.string() + ": unsupported manifest version");
    }

    std::vector<ManifestEntry> entries;
    std::set<std::string> seen;
    const auto& models = doc["models"];
    entries.reserve(models.size());
    for (std::size_t i = 0; i < models.size(); ++i) {
        auto entry = parse_entry(models[i], i, dir);
        if (!seen.insert(entry.model_name).second) {
            throw Error(Errc::duplicate_model_name, "model name '" + entry.model_name + "' appears more than once");
        }
        check_analysis_file(entry);
        entries.push_back(std::move(entry));
    }
    return entries;
}

const ManifestEntry& select_model(const std::vector<ManifestEntry>& entries, const PoolQuery& query) {
    const ManifestEntry* best = nullptr;
    for (const auto& e : entries) {
        if (!query.matches(e)) {
            continue;
        }
        if (best == nullptr || e.test_avg_f1 > best->test_avg_f1 ||
            (e.test_avg_f1 == best->test_avg_f1 && e.model_name < best->model_name)) {
            best = &e;
        }
    }
    if (best == nullptr) {
        throw Error(Errc::no_matching_model, "no model in the pool matches the query");
    }
    return *best;
}

ModelSummary describe(const ManifestEntry& entry) {
    return ModelSummary{entry.model_name, entry.accuracy, entry.analysis_length, entry.test_avg_f1};
}

}  // namespace awb
