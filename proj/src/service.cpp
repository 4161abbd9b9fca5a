#include "awb/service.hpp"

#include <algorithm>
#include <charconv>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "awb/error.hpp"
#include "awb/json_io.hpp"
#include "awb/optimizer.hpp"
#include "awb/postprocess.hpp"

namespace awb {

namespace {

Response error_response(const Error& e) {
    return Response{http_status(e.code()), error_to_json(e.code_name(), e.what())};
}

int parse_positive_int(const std::string& key, const std::string& text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0) {
        throw Error(Errc::validation_error, "query parameter '" + key + "' must be a positive integer");
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    throw Error(Errc::validation_error, "query parameter '" + key + "' must be true/false");
}

PoolQuery query_from_params(const std::map<std::string, std::string>& params) {
    PoolQuery q;
    for (const auto& [key, value] : params) {
        if (key == "window_size") {
            q.window_size = parse_positive_int(key, value);
        } else if (key == "dimensionality") {
            q.dimensionality = parse_positive_int(key, value);
        } else if (key == "reduced_features") {
            q.reduced_features = parse_bool(key, value);
        } else if (key == "binary") {
            q.binary = parse_bool(key, value);
        } else {
            throw Error(Errc::validation_error, "unknown query parameter '" + key + "'");
        }
    }
    return q;
}

json channel_to_json(const DecimatedChannel& c) {
    return json{{"index", c.index}, {"value", c.value}};
}

std::vector<double> as_real(std::span<const Label> labels) {
    return std::vector<double>(labels.begin(), labels.end());
}

template <typename Fn>
Response guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return error_response(e);
    } catch (const std::exception& e) {
        return Response{500, error_to_json("internal_error", e.what())};
    }
}

}  // namespace

int http_status(Errc code) noexcept {
    switch (code) {
        case Errc::no_matching_model:
            return 404;
        case Errc::no_model_selected:
        case Errc::busy:
            return 409;
        case Errc::no_feasible_config:
            return 422;
        case Errc::io_error:
        case Errc::missing_manifest:
        case Errc::malformed_manifest:
        case Errc::dangling_analysis_path:
        case Errc::malformed_record:
        case Errc::empty_series:
            return 500;
        default:
            return 400;
    }
}

Service::Service(ServiceConfig config)
    : config_(std::move(config)), pool_(std::make_shared<const PoolSnapshot>()) {
    reload_pool();
}

void Service::reload_pool() {
    auto next = std::make_shared<PoolSnapshot>();
    try {
        next->entries = index_pool(config_.pool_dir);
    } catch (const Error& e) {
        std::lock_guard lock(snapshot_mutex_);
        if (pool_->entries.empty()) {
            next->problem = std::string(e.code_name()) + ": " + e.what();
            pool_ = std::move(next);
        }
        spdlog::warn("pool index failed, keeping previous index: {}", e.what());
        return;
    }
    spdlog::info("indexed {} models from {}", next->entries.size(), config_.pool_dir.string());
    std::lock_guard lock(snapshot_mutex_);
    pool_ = std::move(next);
}

std::shared_ptr<const Service::PoolSnapshot> Service::pool() const {
    std::lock_guard lock(snapshot_mutex_);
    return pool_;
}

std::shared_ptr<const Service::Session> Service::session() const {
    std::lock_guard lock(snapshot_mutex_);
    return session_;
}

std::size_t Service::pool_size() const {
    return pool()->entries.size();
}

Response Service::health() const {
    const auto snapshot = pool();
    json body{
        {"status", snapshot->entries.empty() ? "degraded" : "ok"},
        {"pool_size", snapshot->entries.size()},
        {"version", kServiceVersion},
    };
    if (!snapshot->problem.empty()) {
        body["detail"] = snapshot->problem;
    }
    return Response{200, body};
}

Response Service::list_pool() const {
    const auto snapshot = pool();
    std::vector<const ManifestEntry*> sorted;
    for (const auto& e : snapshot->entries) {
        sorted.push_back(&e);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const ManifestEntry* a, const ManifestEntry* b) { return a->model_name < b->model_name; });
    json models = json::array();
    for (const auto* e : sorted) {
        models.push_back(entry_to_json(*e));
    }
    return Response{200, json{{"models", models}}};
}

Response Service::select_model(const std::map<std::string, std::string>& params) {
    return guarded([&] {
        const auto query = query_from_params(params);
        const auto snapshot = pool();
        const ManifestEntry& chosen = awb::select_model(snapshot->entries, query);

        auto series = load_binary_analysis(chosen.analysis_path);
        const auto raw = evaluate(series, series.predicted());
        auto next = std::make_shared<const Session>(Session{chosen, std::move(series), raw});
        {
            std::lock_guard lock(snapshot_mutex_);
            session_ = next;
        }
        spdlog::info("selected model {}", chosen.model_name);
        return Response{200, json{
                                 {"model", summary_to_json(describe(chosen))},
                                 {"raw_metrics", metrics_to_json(raw)},
                                 {"session_id", nullptr},
                             }};
    });
}

Response Service::postprocess(const json& body) const {
    return guarded([&] {
        const auto current = session();
        if (!current) {
            throw Error(Errc::no_model_selected, "select a model via GET /api/models first");
        }
        if (!body.is_object()) {
            throw Error(Errc::validation_error, "request body must be a JSON object");
        }
        PostProcessConfig config;
        std::size_t max_points = config_.max_points;
        try {
            config.window.kind = parse_window_kind(body.at("window_kind").get<std::string>());
            const auto length = body.at("window_length").get<std::int64_t>();
            if (length <= 0) {
                throw Error(Errc::zero_length, "window_length must be >= 1");
            }
            config.window.length = static_cast<std::size_t>(length);
            config.threshold = body.at("threshold").get<double>();
            if (body.contains("max_points") && !body["max_points"].is_null()) {
                const auto requested = body["max_points"].get<std::int64_t>();
                if (requested < static_cast<std::int64_t>(kMinPlotPoints)) {
                    throw Error(Errc::validation_error, "max_points must be >= " + std::to_string(kMinPlotPoints));
                }
                max_points = static_cast<std::size_t>(requested);
            }
        } catch (const json::exception& e) {
            throw Error(Errc::validation_error, std::string("bad postprocess request: ") + e.what());
        }

        const AnalysisSeries& series = current->series;
        const auto processed = awb::postprocess(series, config);
        const auto metrics = evaluate(series, processed.decided);
        const auto cma = cma_accuracy(processed.decided, series.ground_truth());

        const auto predicted = decimate_minmax(as_real(series.predicted()), max_points);
        json channels{
            {"predicted", channel_to_json(predicted)},
            {"ground_truth", channel_to_json(decimate_minmax(as_real(series.ground_truth()), max_points))},
            {"smoothed", channel_to_json(decimate_minmax(processed.smoothed, max_points))},
            {"decided", channel_to_json(decimate_minmax(as_real(processed.decided), max_points))},
            {"cma", channel_to_json(decimate_minmax(cma, max_points))},
            {"runtime", channel_to_json(decimate_minmax(series.runtime_ms(), max_points))},
        };
        return Response{200, json{
                                 {"model_name", current->model.model_name},
                                 {"config", config_to_json(config)},
                                 {"warmup_len", processed.warmup_len},
                                 {"metrics", metrics_to_json(metrics)},
                                 {"pie", pie_to_json(pie_breakdown(metrics.confusion))},
                                 {"plot",
                                  {{"decimation_factor", predicted.factor},
                                   {"source_length", series.length()},
                                   {"channels", channels}}},
                                 {"session_id", nullptr},
                             }};
    });
}

Response Service::optimize(const json& body) {
    return guarded([&] {
        const auto current = session();
        if (!current) {
            throw Error(Errc::no_model_selected, "select a model via GET /api/models first");
        }
        if (!body.is_object()) {
            throw Error(Errc::validation_error, "request body must be a JSON object");
        }
        const auto grid = grid_from_json(body.contains("grid") ? body["grid"] : json());
        const auto objective = objective_from_json(body.contains("objective") ? body["objective"] : json());
        grid.validate(current->series.length());

        bool expected = false;
        if (!progress_.running.compare_exchange_strong(expected, true)) {
            throw Error(Errc::busy, "an optimization is already running");
        }
        progress_.evaluated = 0;
        progress_.total = grid.size();

        SearchOptions options;
        options.on_progress = [this](std::size_t done, std::size_t) { progress_.evaluated = done; };
        Response response;
        try {
            const auto result = grid_search(current->series, grid, objective, options);
            json out = optimization_to_json(result, objective);
            out["model_name"] = current->model.model_name;
            response = Response{200, out};
        } catch (const Error& e) {
            response = error_response(e);
        } catch (...) {
            progress_.running = false;
            throw;
        }
        {
            std::lock_guard lock(progress_.last_mutex);
            progress_.last = response.body;
        }
        progress_.running = false;
        return response;
    });
}

Response Service::optimize_status() const {
    json body{
        {"running", progress_.running.load()},
        {"evaluated", progress_.evaluated.load()},
        {"total", progress_.total.load()},
    };
    std::lock_guard lock(progress_.last_mutex);
    body["last"] = progress_.last;
    return Response{200, body};
}

void Service::mount(httplib::Server& server) {
    auto send = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    auto parse_body = [](const httplib::Request& req) -> std::optional<json> {
        try {
            return json::parse(req.body);
        } catch (const json::exception&) {
            return std::nullopt;
        }
    };
    auto bad_json = [send](httplib::Response& res) {
        send(res, Response{400, error_to_json("validation_error", "request body is not valid JSON")});
    };

    server.Get("/api/health", [this, send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
    server.Get("/api/pool", [this, send](const httplib::Request&, httplib::Response& res) { send(res, list_pool()); });
    server.Post("/api/pool/reload", [this, send](const httplib::Request&, httplib::Response& res) {
        reload_pool();
        send(res, health());
    });
    server.Get("/api/models", [this, send](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> params;
        for (const auto& [key, value] : req.params) {
            params[key] = value;
        }
        send(res, select_model(params));
    });
    server.Post("/api/postprocess", [this, send, parse_body, bad_json](const httplib::Request& req,
                                                                       httplib::Response& res) {
        const auto body = parse_body(req);
        body ? send(res, postprocess(*body)) : bad_json(res);
    });
    server.Post("/api/optimize", [this, send, parse_body, bad_json](const httplib::Request& req,
                                                                    httplib::Response& res) {
        const auto body = parse_body(req);
        body ? send(res, optimize(*body)) : bad_json(res);
    });
    server.Get("/api/optimize/status",
               [this, send](const httplib::Request&, httplib::Response& res) { send(res, optimize_status()); });

    server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
        spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
    });
    if (config_.static_dir) {
        server.set_mount_point("/", config_.static_dir->string());
    }
}

}  // namespace awb
