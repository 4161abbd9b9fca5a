#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "awb/decimate.hpp"
#include "awb/error.hpp"
#include "awb/metrics.hpp"
#include "awb/pool.hpp"
#include "awb/series.hpp"

namespace httplib {
class Server;
}

namespace awb {

inline constexpr const char* kServiceVersion = "0.1.0";

struct ServiceConfig {
    std::filesystem::path pool_dir;
    std::size_t max_points = kDefaultMaxPoints;
    std::optional<std::filesystem::path> static_dir;
};

struct Response {
    int status = 200;
    nlohmann::json body;
};

/// Single-session backend for the interactive workbench. The pool index and
/// the selected model are immutable snapshots swapped under a mutex, so
/// requests in flight keep the snapshot they started with.
class Service {
public:
    explicit Service(ServiceConfig config);

    /// Re-indexes the pool directory. On failure the previous index keeps
    /// serving; a missing manifest on first load yields an empty pool.
    void reload_pool();

    Response health() const;
    Response list_pool() const;
    Response select_model(const std::map<std::string, std::string>& params);
    Response postprocess(const nlohmann::json& body) const;
    Response optimize(const nlohmann::json& body);
    Response optimize_status() const;

    /// Registers every /api route (and the static UI, when configured).
    void mount(httplib::Server& server);

    std::size_t pool_size() const;

private:
    struct PoolSnapshot {
        std::vector<ManifestEntry> entries;
        std::string problem;
    };
    struct Session {
        ManifestEntry model;
        AnalysisSeries series;
        MetricsReport raw_metrics;
    };
    struct OptimizeProgress {
        std::atomic<bool> running{false};
        std::atomic<std::size_t> evaluated{0};
        std::atomic<std::size_t> total{0};
        mutable std::mutex last_mutex;
        nlohmann::json last;
    };

    std::shared_ptr<const PoolSnapshot> pool() const;
    std::shared_ptr<const Session> session() const;

    ServiceConfig config_;
    mutable std::mutex snapshot_mutex_;
    std::shared_ptr<const PoolSnapshot> pool_;
    std::shared_ptr<const Session> session_;
    OptimizeProgress progress_;
};

/// HTTP status for a domain error code.
int http_status(Errc code) noexcept;

}  // namespace awb
