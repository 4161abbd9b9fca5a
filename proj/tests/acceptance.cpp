// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <spdlog/spdlog.h>

#include "awb/cli.hpp"
#include "awb/error.hpp"
#include "awb/json_io.hpp"
#include "awb/metrics.hpp"
#include "awb/optimizer.hpp"
#include "awb/pool.hpp"
#include "awb/postprocess.hpp"
#include "awb/service.hpp"
#include "awb/window.hpp"
#include "oracles.hpp"
#include "pool_builder.hpp"
#include "test_util.hpp"

using namespace awb;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure {
    std::string what;
};

void expect(bool ok, const std::string& what) {
    if (!ok) {
        throw Failure{what};
    }
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Label> to_vec(std::span<const Label> s) {
    return {s.begin(), s.end()};
}

// Each check returns a short detail string on success and throws Failure otherwise.
std::string window_golden() {
    const auto start = Clock::now();
    const auto close = [](const std::vector<double>& got, const std::vector<double>& want) {
        if (got.size() != want.size()) return false;
        for (std::size_t i = 0; i < got.size(); ++i) {
            if (std::abs(got[i] - want[i]) > 1e-12) return false;
        }
        return true;
    };
    expect(close(generate_window({WindowKind::hamming, 5}), {0.08, 0.54, 1.0, 0.54, 0.08}), "hamming 5 golden");
    expect(close(generate_window({WindowKind::bohman, 3}), {0.0, 1.0, 0.0}), "bohman 3 golden");
    for (auto kind : kAllWindowKinds) {
        for (std::size_t n = 1; n <= 257; ++n) {
            const auto w = generate_window({kind, n});
            expect(w.size() == n, "length");
            for (std::size_t i = 0; i < n; ++i) {
                expect(std::abs(w[i] - w[n - 1 - i]) <= 1e-12, std::string(to_string(kind)) + " symmetry");
                expect(w[i] >= 0.0, std::string(to_string(kind)) + " non-negative");
            }
        }
    }
    const double t = seconds_since(start);
    expect(t < 1.0, "sweep took " + std::to_string(t) + " s");
    return "6 kinds x N=1..257 in " + std::to_string(t) + " s";
}

std::string filter_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    const int cases = 1000;
    for (int c = 0; c < cases; ++c) {
        const std::size_t n = 1 + rng() % 2000;
        const std::size_t w = 1 + rng() % std::min<std::size_t>(n, 64);
        const auto kind = kAllWindowKinds[rng() % kAllWindowKinds.size()];
        const auto pred = oracle::random_labels(rng, n, static_cast<double>(rng() % 101) / 100.0);
        const auto got = rolling_weighted_mean(pred, {kind, w});
        const auto want = oracle::rolling_mean(pred, oracle::window(kind, w));
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(got[i] - want[i]));
        }
    }
    const double t = seconds_since(start);
    std::ostringstream detail;
    detail << cases << " cases, max |err| " << worst << ", " << t << " s";
    expect(worst <= 1e-9, detail.str());
    expect(t < 10.0, detail.str());
    return detail.str();
}

std::string identity() {
    std::mt19937_64 rng(1002);
    for (int c = 0; c < 100; ++c) {
        const auto series = oracle::noisy_blocks(rng, 1 + rng() % 3000, 0.2, 1, 50);
        for (double th : {0.0, 0.3, 0.7}) {
            const auto p = postprocess(series, {{WindowKind::rectangular, 1}, th});
            expect(p.decided == to_vec(series.predicted()), "identity broken at theta " + std::to_string(th));
        }
    }
    return "100 series x 3 thresholds";
}

std::string threshold_monotonicity() {
    std::mt19937_64 rng(1003);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 0; c < 500; ++c) {
        const std::size_t n = 2 + rng() % 1500;
        const std::size_t w = 1 + rng() % std::min<std::size_t>(n, 128);
        const auto kind = kAllWindowKinds[rng() % kAllWindowKinds.size()];
        const auto pred = oracle::random_labels(rng, n, unit(rng));
        const auto smoothed = rolling_weighted_mean(pred, {kind, w});
        std::vector<double> ths(6);
        for (auto& th : ths) th = unit(rng);
        std::sort(ths.begin(), ths.end());
        auto prev = apply_threshold(smoothed, ths[0]);
        for (std::size_t k = 1; k < ths.size(); ++k) {
            const auto next = apply_threshold(smoothed, ths[k]);
            for (std::size_t i = 0; i < n; ++i) {
                expect(next[i] <= prev[i], "anomaly set grew with a higher threshold");
            }
            prev = next;
        }
    }
    return "500 pairs x 6 ascending thresholds";
}

std::string budget_identity() {
    std::mt19937_64 rng(1004);
    double worst = 0.0;
    for (int c = 0; c < 1000; ++c) {
        const std::size_t n = 1 + rng() % 2000;
        const auto d = oracle::random_labels(rng, n, static_cast<double>(rng() % 101) / 100.0);
        const auto g = oracle::random_labels(rng, n, static_cast<double>(rng() % 101) / 100.0);
        const auto r = report(confusion(d, g), {});
        worst = std::max(worst, std::abs(r.accuracy + r.fp_ratio + r.fn_ratio - 1.0));
    }
    expect(worst <= 1e-12, "budget error " + std::to_string(worst));
    // Raw row of the first pool model: 71.1 % accuracy, 7.6 % FP, 21.3 % FN over 1000 samples.
    const auto table = metrics_to_json(report({300, 411, 76, 213}, {}));
    expect(table.at("accuracy_pct") == 71.1 && table.at("fp_pct") == 7.6 && table.at("fn_pct") == 21.3,
           "table fixture percentages");
    const double sum = table.at("accuracy_pct").get<double>() + table.at("fp_pct").get<double>() +
                       table.at("fn_pct").get<double>();
    expect(std::abs(sum - 100.0) <= 1e-9, "table fixture sums to " + std::to_string(sum));
    std::ostringstream detail;
    detail << "1000 pairs, max |err| " << worst << "; 71.1 + 7.6 + 21.3 = " << sum;
    return detail.str();
}

std::string cma_consistency() {
    std::mt19937_64 rng(1005);
    for (int c = 0; c < 500; ++c) {
        const std::size_t n = 1 + rng() % 5000;
        const auto d = oracle::random_labels(rng, n, static_cast<double>(rng() % 101) / 100.0);
        const auto g = oracle::random_labels(rng, n, static_cast<double>(rng() % 101) / 100.0);
        expect(cma_accuracy(d, g).back() == report(confusion(d, g), {}).accuracy, "cma last != accuracy");
    }
    return "500 cases, exact";
}

std::string optimizer_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(1006);
    int searches = 0;
    int infeasible = 0;
    for (int c = 0; c < 50; ++c) {
        const std::size_t n = 100 + rng() % 900;
        const auto series = oracle::noisy_blocks(rng, n, 0.05 + 0.25 * static_cast<double>(rng() % 100) / 100.0, 5, 60);
        SearchGrid grid;
        for (auto k : kAllWindowKinds) {
            if (rng() % 2) grid.kinds.push_back(k);
        }
        if (grid.kinds.empty()) grid.kinds.push_back(kAllWindowKinds[rng() % kAllWindowKinds.size()]);
        for (std::size_t len = 1 + rng() % 3; len <= 60 && grid.lengths.size() < 6; len += 1 + rng() % 15) {
            grid.lengths.push_back(len);
        }
        // Coarse thresholds on a 0.05 lattice make exact ties between configs common.
        for (int step = static_cast<int>(rng() % 4); step <= 20 && grid.thresholds.size() < 5;
             step += 1 + static_cast<int>(rng() % 6)) {
            grid.thresholds.push_back(step * 0.05);
        }
        expect(grid.size() <= 200, "grid too large");

        const auto pred = to_vec(series.predicted());
        const auto gt = to_vec(series.ground_truth());
        for (int target = 0; target < 3; ++target) {
            const auto objective_target = static_cast<ObjectiveTarget>(target);
            for (std::optional<double> floor : {std::optional<double>{}, std::optional<double>{0.5 + 0.45 * (rng() % 100) / 100.0}}) {
                ++searches;
                const auto want = oracle::exhaustive_search(pred, gt, grid.kinds, grid.lengths, grid.thresholds, target,
                                                            floor ? &*floor : nullptr);
                if (!want.found) {
                    ++infeasible;
                    bool raised = false;
                    try {
                        grid_search(series, grid, {objective_target, floor});
                    } catch (const Error& e) {
                        raised = e.code() == Errc::no_feasible_config;
                    }
                    expect(raised, "expected no_feasible_config");
                    continue;
                }
                const auto got = grid_search(series, grid, {objective_target, floor});
                expect(got.best_config.window.kind == want.kind && got.best_config.window.length == want.length &&
                           got.best_config.threshold == want.threshold,
                       "config differs on series " + std::to_string(c));
                const auto& cb = got.best_metrics.confusion;
                expect(cb.tp == static_cast<std::size_t>(want.counts.tp) &&
                           cb.tn == static_cast<std::size_t>(want.counts.tn) &&
                           cb.fp == static_cast<std::size_t>(want.counts.fp) &&
                           cb.fn == static_cast<std::size_t>(want.counts.fn),
                       "metrics differ on series " + std::to_string(c));
                expect(got.feasible == want.feasible && got.evaluated == grid.size(), "feasible count differs");
            }
        }
    }
    const double t = seconds_since(start);
    expect(t < 30.0, "took " + std::to_string(t) + " s");
    return std::to_string(searches) + " searches (" + std::to_string(infeasible) + " infeasible) in " +
           std::to_string(t) + " s";
}

std::string model_selection() {
    std::mt19937_64 rng(1007);
    const int windows[] = {100, 200, 500, 1000};
    const int dims[] = {3, 6, 60};
    std::vector<ManifestEntry> pool;
    for (int i = 0; i < 43; ++i) {
        ManifestEntry e;
        const int w = windows[rng() % 4];
        const int d = dims[rng() % 3];
        e.window_size = w;
        e.dimensionality = d;
        e.reduced_features = rng() % 2;
        e.binary = rng() % 2;
        // F1 on a 0.05 lattice so equal-score matches occur.
        e.test_avg_f1 = static_cast<double>(10 + rng() % 9) * 0.05;
        e.accuracy = 0.7;
        e.model_name = std::string(rng() % 2 ? "tabl" : "resnet") + "_w" + std::to_string(w) + "_d" +
                       std::to_string(d) + "_" + std::to_string(i);
        pool.push_back(e);
    }
    std::shuffle(pool.begin(), pool.end(), rng);

    int ties = 0;
    int misses = 0;
    for (int q = 0; q < 100; ++q) {
        PoolQuery query;
        if (rng() % 2) query.window_size = windows[rng() % 4];
        if (rng() % 2) query.dimensionality = dims[rng() % 3];
        if (rng() % 3 == 0) query.reduced_features = rng() % 2;
        if (rng() % 3 == 0) query.binary = rng() % 2;

        const ManifestEntry* want = nullptr;
        int at_best = 0;
        for (const auto& e : pool) {
            const bool match = (!query.window_size || *query.window_size == e.window_size) &&
                               (!query.dimensionality || *query.dimensionality == e.dimensionality) &&
                               (!query.reduced_features || *query.reduced_features == e.reduced_features) &&
                               (!query.binary || *query.binary == e.binary);
            if (!match) continue;
            if (!want || e.test_avg_f1 > want->test_avg_f1 ||
                (e.test_avg_f1 == want->test_avg_f1 && e.model_name < want->model_name)) {
                at_best = (want && e.test_avg_f1 == want->test_avg_f1) ? at_best + 1 : 1;
                want = &e;
            } else if (e.test_avg_f1 == want->test_avg_f1) {
                ++at_best;
            }
        }
        if (want == nullptr) {
            ++misses;
            bool raised = false;
            try {
                select_model(pool, query);
            } catch (const Error& e) {
                raised = e.code() == Errc::no_matching_model;
            }
            expect(raised, "expected no_matching_model");
            continue;
        }
        ties += at_best > 1 ? 1 : 0;
        expect(select_model(pool, query).model_name == want->model_name, "query " + std::to_string(q));
    }
    PoolQuery impossible;
    impossible.window_size = 12345;
    bool raised = false;
    try {
        select_model(pool, impossible);
    } catch (const Error& e) {
        raised = e.code() == Errc::no_matching_model;
    }
    expect(raised, "unsatisfiable query did not raise");
    expect(ties > 0, "no tie was exercised");
    return "43 models, 100 queries (" + std::to_string(ties) + " ties, " + std::to_string(misses) + " no-match)";
}

std::string noise_reduction() {
    std::mt19937_64 rng(1008);
    const auto series = oracle::noisy_blocks(rng, 60000, 0.10, 1500, 5000);
    const auto raw = evaluate(series, series.predicted());
    const auto p = postprocess(series, {{WindowKind::hamming, 500}, 0.5});
    const auto processed = evaluate(series, p.decided);
    const auto t_raw = oracle::transitions(to_vec(series.predicted()));
    const auto t_pp = oracle::transitions(p.decided);
    std::ostringstream detail;
    detail << "transitions " << t_raw << " -> " << t_pp << ", fp " << raw.fp_ratio << " -> " << processed.fp_ratio;
    expect(t_pp < t_raw && processed.fp_ratio < raw.fp_ratio, detail.str());
    return detail.str();
}

std::string latency() {
    testutil::TempDir dir;
    std::mt19937_64 rng(1009);
    const auto series = oracle::noisy_blocks(rng, 100000, 0.10, 500, 3000);
    std::filesystem::create_directories(dir / "runs");
    write_analysis(series, dir / "runs/big.dtaz.jsonl");
    const json manifest{{"version", 1},
                        {"models",
                         {{{"model_name", "big"},
                           {"window_size", 500},
                           {"dimensionality", 60},
                           {"reduced_features", false},
                           {"binary", true},
                           {"test_avg_f1", 0.8},
                           {"accuracy", 0.7},
                           {"analysis_path", "runs/big.dtaz.jsonl"},
                           {"analysis_length", 100000}}}}};
    testutil::write_file(dir / "pool.json", manifest.dump());

    Service svc(ServiceConfig{dir.path(), kDefaultMaxPoints, std::nullopt});
    expect(svc.select_model({}).status == 200, "select failed");
    double worst = 0.0;
    for (auto kind : kAllWindowKinds) {
        const auto start = Clock::now();
        const auto r = svc.postprocess(json{{"window_kind", to_string(kind)}, {"window_length", 800}, {"threshold", 0.5}});
        const double t = seconds_since(start);
        expect(r.status == 200, "postprocess failed");
        worst = std::max(worst, t);
    }
    std::ostringstream detail;
    detail << "100000 samples, window 800, slowest kind " << worst * 1000.0 << " ms";
    expect(worst <= 1.0, detail.str());
    return detail.str();
}

std::string cross_interface() {
    testutil::TempDir dir;
    const auto input = testutil::fixture("pool/tabl_w500_d60.dtaz.jsonl").string();
    Service svc(ServiceConfig{testutil::fixture("pool"), kDefaultMaxPoints, std::nullopt});
    expect(svc.select_model({{"window_size", "500"}}).status == 200, "select failed");
    int compared = 0;
    const std::vector<std::tuple<std::string, int, double>> configs{
        {"rectangular", 1, 0.5}, {"hamming", 5, 0.5}, {"bohman", 600, 0.7}, {"hann", 101, 0.3}, {"blackman", 33, 0.0}};
    for (const auto& [kind, len, th] : configs) {
        const auto out_path = (dir / "out.json").string();
        std::ostringstream out, err, th_text;
        th_text << th;
        const int code = run_cli({"process", "--input", input, "--window", kind, "--size", std::to_string(len),
                                  "--threshold", th_text.str(), "--output", out_path},
                                 out, err);
        expect(code == kExitOk, "cli failed: " + err.str());
        const auto cli = json::parse(testutil::read_file(out_path)).at("metrics").dump();
        const auto api = svc.postprocess(json{{"window_kind", kind}, {"window_length", len}, {"threshold", th}});
        expect(api.status == 200, "service failed");
        expect(api.body.at("metrics").dump() == cli, "metric fields differ for " + kind);
        ++compared;
    }
    return std::to_string(compared) + " configs, metric JSON identical";
}

}  // namespace

int main() {
    spdlog::set_level(spdlog::level::warn);
    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
        {"window golden vectors and shape properties", window_golden},
        {"filter matches direct summation", filter_oracle},
        {"rectangular 1 is the identity", identity},
        {"threshold monotonicity", threshold_monotonicity},
        {"metric budget identity", budget_identity},
        {"cma consistency", cma_consistency},
        {"optimizer matches exhaustive oracle", optimizer_oracle},
        {"model selection", model_selection},
        {"noise reduction workflow", noise_reduction},
        {"postprocess latency", latency},
        {"cli and service agree", cross_interface},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        try {
            const auto detail = check();
            std::cout << "[PASS] " << name << ": " << detail << '\n';
        } catch (const Failure& f) {
            ++failed;
            std::cout << "[FAIL] " << name << ": " << f.what << '\n';
        } catch (const std::exception& e) {
            ++failed;
            std::cout << "[FAIL] " << name << ": exception: " << e.what() << '\n';
        }
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
