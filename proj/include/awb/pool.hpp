#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace awb {

/// Metadata of one trained model in a pool. `analysis_path` is stored
/// resolved against the manifest's directory.
struct ManifestEntry {
    std::string model_name;
    int window_size = 1;
    int dimensionality = 1;
    bool reduced_features = false;
    bool binary = true;
    double test_avg_f1 = 0.0;
    double accuracy = 0.0;
    std::filesystem::path analysis_path;
    std::size_t analysis_length = 1;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// Unset fields match anything; set fields must match exactly.
struct PoolQuery {
    std::optional<int> window_size;
    std::optional<int> dimensionality;
    std::optional<bool> reduced_features;
    std::optional<bool> binary;

    bool matches(const ManifestEntry& entry) const noexcept;
};

struct ModelSummary {
    std::string model_name;
    double accuracy = 0.0;
    std::size_t analysis_length = 0;
    double test_avg_f1 = 0.0;
};

inline constexpr const char* kManifestFileName = "pool.json";

/// Reads `<dir>/pool.json`, validates every entry and checks that each
/// analysis file exists and declares the advertised length.
std::vector<ManifestEntry> index_pool(const std::filesystem::path& dir);

/// Highest test_avg_f1 among matching entries; ties go to the
/// lexicographically smallest model_name.
const ManifestEntry& select_model(const std::vector<ManifestEntry>& entries, const PoolQuery& query);

ModelSummary describe(const ManifestEntry& entry);

}  // namespace awb
