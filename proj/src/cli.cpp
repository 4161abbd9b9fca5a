#include "awb/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include "awb/error.hpp"
#include "awb/json_io.hpp"
#include "awb/metrics.hpp"
#include "awb/optimizer.hpp"
#include "awb/pool.hpp"
#include "awb/postprocess.hpp"
#include "awb/series.hpp"
#include "awb/service.hpp"

namespace awb {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out || !(out << text)) {
        throw Error(Errc::io_error, "cannot write " + path.string());
    }
}

void print_metrics_table(std::ostream& out, const MetricsReport& m) {
    const auto row = [&out](const char* name, const std::string& value) {
        out << "  " << std::left << std::setw(18) << name << value << '\n';
    };
    auto pct = [](double fraction) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(1) << round_pct(fraction) << " %";
        return s.str();
    };
    auto ms = [](double v) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(3) << v << " ms";
        return s.str();
    };
    row("accuracy", pct(m.accuracy));
    row("false positives", pct(m.fp_ratio));
    row("false negatives", pct(m.fn_ratio));
    row("f1", pct(m.f1));
    row("tp/tn/fp/fn", std::to_string(m.confusion.tp) + " / " + std::to_string(m.confusion.tn) + " / " +
                           std::to_string(m.confusion.fp) + " / " + std::to_string(m.confusion.fn));
    row("runtime mean", ms(m.runtime.mean_ms));
    row("runtime p99", ms(m.runtime.p99_ms));
    row("runtime max", ms(m.runtime.max_ms));
}

bool parse_bool_flag(const std::string& name, const std::string& text) {
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    throw Error(Errc::validation_error, name + " must be true or false");
}

struct PoolArgs {
    std::string dir;
    int window_size = 0;
    int dimensionality = 0;
    std::string reduced_features;
    std::string binary;
};

struct ProcessArgs {
    std::string input;
    std::string window = "rectangular";
    std::size_t size = 1;
    double threshold = 0.5;
    std::string output;
};

struct OptimizeArgs {
    std::string input;
    std::string objective;
    std::vector<std::string> kinds;
    std::vector<std::size_t> lengths;
    std::vector<double> thresholds;
    double accuracy_floor = 0.0;
    std::string audit = "optimize_audit.csv";
};

struct ServeArgs {
    std::string pool;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t max_points = kDefaultMaxPoints;
    std::string static_dir;
};

int cmd_pool_list(const PoolArgs& a, std::ostream& out) {
    auto entries = index_pool(a.dir);
    std::sort(entries.begin(), entries.end(),
              [](const ManifestEntry& x, const ManifestEntry& y) { return x.model_name < y.model_name; });
    std::size_t name_width = 10;
    for (const auto& e : entries) {
        name_width = std::max(name_width, e.model_name.size() + 2);
    }
    out << std::left << std::setw(static_cast<int>(name_width)) << "model" << std::setw(8) << "window" << std::setw(6)
        << "dims" << std::setw(9) << "reduced" << std::setw(8) << "binary" << std::setw(9) << "f1"
        << std::setw(10) << "accuracy" << "length\n";
    for (const auto& e : entries) {
        out << std::left << std::setw(static_cast<int>(name_width)) << e.model_name << std::setw(8) << e.window_size
            << std::setw(6) << e.dimensionality << std::setw(9) << (e.reduced_features ? "yes" : "no")
            << std::setw(8) << (e.binary ? "yes" : "no") << std::setw(9) << std::fixed << std::setprecision(4)
            << e.test_avg_f1 << std::setw(10) << e.accuracy << e.analysis_length << '\n';
    }
    return kExitOk;
}

int cmd_pool_select(const PoolArgs& a, const CLI::App& sub, std::ostream& out) {
    PoolQuery q;
    if (sub.count("--window-size") > 0) {
        q.window_size = a.window_size;
    }
    if (sub.count("--dimensionality") > 0) {
        q.dimensionality = a.dimensionality;
    }
    if (sub.count("--reduced-features") > 0) {
        q.reduced_features = parse_bool_flag("--reduced-features", a.reduced_features);
    }
    if (sub.count("--binary") > 0) {
        q.binary = parse_bool_flag("--binary", a.binary);
    }
    const auto entries = index_pool(a.dir);
    out << summary_to_json(describe(select_model(entries, q))).dump(2) << '\n';
    return kExitOk;
}

int cmd_process(const ProcessArgs& a, std::ostream& out) {
    const auto series = load_binary_analysis(a.input);
    const PostProcessConfig config{WindowSpec{parse_window_kind(a.window), a.size}, a.threshold};
    const auto processed = postprocess(series, config);
    const auto metrics = evaluate(series, processed.decided);

    if (!a.output.empty()) {
        const json doc{
            {"config", config_to_json(config)},
            {"metrics", metrics_to_json(metrics)},
            {"smoothed", processed.smoothed},
            {"decided", processed.decided},
        };
        write_text(a.output, doc.dump() + "\n");
    }
    out << "window " << to_string(config.window.kind) << " / " << config.window.length << ", threshold "
        << config.threshold << ", " << series.length() << " samples\n";
    print_metrics_table(out, metrics);
    return kExitOk;
}

int cmd_metrics(const std::string& input, std::ostream& out) {
    const auto series = load_binary_analysis(input);
    const auto metrics = evaluate(series, series.predicted());
    const json doc{
        {"metrics", metrics_to_json(metrics)},
        {"pie", pie_to_json(pie_breakdown(metrics.confusion))},
    };
    out << doc.dump(2) << '\n';
    return kExitOk;
}

std::string audit_csv(const OptimizationResult& r) {
    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "kind,length,threshold,accuracy,fp_ratio,fn_ratio,feasible,best\n";
    for (std::size_t i = 0; i < r.audit.size(); ++i) {
        const auto& p = r.audit[i];
        csv << to_string(p.config.window.kind) << ',' << p.config.window.length << ',' << p.config.threshold << ','
            << p.metrics.accuracy << ',' << p.metrics.fp_ratio << ',' << p.metrics.fn_ratio << ','
            << (p.feasible ? 1 : 0) << ',' << (i == r.best_index && p.feasible ? 1 : 0) << '\n';
    }
    return csv.str();
}

int cmd_optimize(const OptimizeArgs& a, bool has_floor, std::ostream& out) {
    const auto series = load_binary_analysis(a.input);
    SearchGrid grid;
    for (const auto& k : a.kinds) {
        grid.kinds.push_back(parse_window_kind(k));
    }
    grid.lengths = a.lengths;
    grid.thresholds = a.thresholds;
    Objective objective{parse_objective_target(a.objective), std::nullopt};
    if (has_floor) {
        objective.accuracy_floor = a.accuracy_floor;
    }

    OptimizationResult result;
    try {
        result = grid_search(series, grid, objective);
    } catch (const Error& e) {
        if (e.code() != Errc::no_feasible_config) {
            throw;
        }
        // Still leave an audit trail with every point marked infeasible.
        Objective unconstrained{objective.target, std::nullopt};
        auto all = grid_search(series, grid, unconstrained);
        for (auto& p : all.audit) {
            p.feasible = false;
        }
        write_text(a.audit, audit_csv(all));
        throw;
    }
    write_text(a.audit, audit_csv(result));

    const auto& best = result.best_config;
    out << "objective " << to_string(objective.target);
    if (objective.accuracy_floor) {
        out << " (accuracy >= " << *objective.accuracy_floor << ")";
    }
    out << ", " << result.feasible << " of " << result.evaluated << " configs feasible\n";
    out << "best: window " << to_string(best.window.kind) << " / " << best.window.length << ", threshold "
        << best.threshold << '\n';
    print_metrics_table(out, result.best_metrics);
    out << "audit written to " << a.audit << '\n';
    return kExitOk;
}

int cmd_serve(const ServeArgs& a) {
    ServiceConfig config;
    config.pool_dir = a.pool;
    config.max_points = a.max_points;
    if (!a.static_dir.empty()) {
        config.static_dir = a.static_dir;
    }
    Service service(config);
    httplib::Server server;
    service.mount(server);
    spdlog::info("listening on {}:{}", a.host, a.port);
    if (!server.listen(a.host, a.port)) {
        throw Error(Errc::io_error, "cannot listen on " + a.host + ":" + std::to_string(a.port));
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Post-process, score and explore anomaly-detection analysis results", "awb"};
    app.require_subcommand(1);

    PoolArgs pool_args;
    auto* pool = app.add_subcommand("pool", "Inspect a model pool");
    pool->require_subcommand(1);
    auto* pool_list = pool->add_subcommand("list", "Print the pool manifest as a table");
    pool_list->add_option("--pool", pool_args.dir, "Pool directory holding pool.json")->required();
    auto* pool_select = pool->add_subcommand("select", "Pick the best-F1 model matching the query");
    pool_select->add_option("--pool", pool_args.dir, "Pool directory holding pool.json")->required();
    pool_select->add_option("--window-size", pool_args.window_size)->check(CLI::PositiveNumber);
    pool_select->add_option("--dimensionality", pool_args.dimensionality)->check(CLI::PositiveNumber);
    pool_select->add_option("--reduced-features", pool_args.reduced_features, "true or false");
    pool_select->add_option("--binary", pool_args.binary, "true or false");

    ProcessArgs process_args;
    auto* process = app.add_subcommand("process", "Apply thresholded rolling-window post-processing");
    process->add_option("--input", process_args.input, "Analysis-result file")->required();
    process->add_option("--window", process_args.window, "Window kind")->required();
    process->add_option("--size", process_args.size, "Window length in samples")->required();
    process->add_option("--threshold", process_args.threshold, "Decision threshold in [0, 1]")->required();
    process->add_option("--output", process_args.output, "Write config, metrics and series as JSON");

    std::string metrics_input;
    auto* metrics = app.add_subcommand("metrics", "Score the raw predictions of an analysis file");
    metrics->add_option("--input", metrics_input, "Analysis-result file")->required();

    OptimizeArgs opt_args;
    auto* optimize = app.add_subcommand("optimize", "Grid-search post-processing parameters");
    optimize->add_option("--input", opt_args.input, "Analysis-result file")->required();
    optimize->add_option("--objective", opt_args.objective, "max_accuracy, min_fp_ratio or min_fn_ratio")->required();
    optimize->add_option("--kinds", opt_args.kinds, "Comma-separated window kinds")->delimiter(',')->required();
    optimize->add_option("--lengths", opt_args.lengths, "Comma-separated window lengths")->delimiter(',')->required();
    optimize->add_option("--thresholds", opt_args.thresholds, "Comma-separated thresholds")
        ->delimiter(',')
        ->required();
    auto* floor_opt = optimize->add_option("--accuracy-floor", opt_args.accuracy_floor, "Minimum accuracy");
    optimize->add_option("--audit", opt_args.audit, "Where to write the grid audit CSV")->capture_default_str();

    ServeArgs serve_args;
    auto* serve = app.add_subcommand("serve", "Run the HTTP service");
    serve->add_option("--pool", serve_args.pool, "Pool directory")->envname("AWB_POOL_DIR")->required();
    serve->add_option("--host", serve_args.host, "Bind address")->envname("AWB_HOST")->capture_default_str();
    serve->add_option("--port", serve_args.port, "Bind port")->envname("AWB_PORT")->capture_default_str();
    serve->add_option("--max-points", serve_args.max_points, "Per-channel plot point cap")
        ->envname("AWB_MAX_POINTS")
        ->capture_default_str()
        ->check(CLI::Range(kMinPlotPoints, std::size_t{10'000'000}));
    serve->add_option("--static-dir", serve_args.static_dir, "Serve UI assets from this directory");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*pool_list) {
            return cmd_pool_list(pool_args, out);
        }
        if (*pool_select) {
            return cmd_pool_select(pool_args, *pool_select, out);
        }
        if (*process) {
            return cmd_process(process_args, out);
        }
        if (*metrics) {
            return cmd_metrics(metrics_input, out);
        }
        if (*optimize) {
            return cmd_optimize(opt_args, floor_opt->count() > 0, out);
        }
        if (*serve) {
            return cmd_serve(serve_args);
        }
    } catch (const Error& e) {
        err << error_to_json(e.code_name(), e.what()).dump() << '\n';
        return kExitDomainError;
    } catch (const std::exception& e) {
        err << error_to_json("internal_error", e.what()).dump() << '\n';
        return kExitDomainError;
    }
    return kExitUsage;
}

}  // namespace awb
