// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The rasster authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rasster/error.hpp"
#include "rasster/experiment.hpp"
#include "rasster/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace rasster;

namespace {

struct CommonOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::size_t threads = 0;
};

void add_common(CLI::App* sub, CommonOptions& o) {
    sub->add_option("--config", o.config, "Experiment configuration (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "Base seed (overrides the config)");
    sub->add_option("--out", o.out, "Output directory (overrides the config)");
    sub->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
}

ExperimentConfig resolve(const CommonOptions& o) {
    ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
    if (o.seed) cfg.seed = *o.seed;
    if (o.out) cfg.output_dir = *o.out;
    cfg.validate();
    return cfg;
}

std::size_t thread_count(const CommonOptions& o) {
    if (o.threads > 0) return o.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + (dir / name).string());
    return os;
}

int cmd_plan(const CommonOptions& o) {
    const auto cfg = resolve(o);
    for (const auto scheme : cfg.schemes) {
        for (const auto N : cfg.N) {
            const std::string stem = "plan_" + std::string(to_string(scheme)) + "_N" + std::to_string(N);
            FrequencyPlan plan;
            try {
                plan = scheme_plan(cfg, scheme, N, cfg.seed);
            } catch (const InvalidPlan& e) {
                std::cerr << "skipped " << stem << ": " << e.what() << '\n';
                continue;
            }
            open_out(cfg.output_dir, stem + ".json") << plan_to_json(plan).dump(2) << '\n';
            auto csv = open_out(cfg.output_dir, stem + ".csv");
            write_plan_csv(csv, plan);
        }
    }
    return 0;
}

int cmd_map(const CommonOptions& o) {
    const auto cfg = resolve(o);
    const auto map = run_detection_map(cfg);
    auto csv = open_out(cfg.output_dir, "detections.csv");
    write_detections_csv(csv, map);
    open_out(cfg.output_dir, "map_summary.json") << map_summary_json(map).dump(2) << '\n';
    for (const auto& s : map.summary) {
        std::cout << to_string(s.scheme) << ": ";
        if (!s.skipped.empty()) std::cout << "skipped (" << s.skipped << ")";
        else if (s.all_false_alarm) std::cout << "empty scene, " << s.false_alarms << " false alarms";
        else std::cout << "hit rate " << *s.hit_rate << ", misses " << s.misses << ", false alarms " << s.false_alarms;
        std::cout << '\n';
    }
    return 0;
}

int cmd_sweep(const CommonOptions& o) {
    const auto cfg = resolve(o);
    const auto sweep = run_hit_rate_sweep(cfg, thread_count(o));
    for (const auto& s : sweep.skipped) std::cerr << "skipped " << s << '\n';
    auto csv = open_out(cfg.output_dir, "hit_rates.csv");
    write_hit_rates_csv(csv, sweep);
    std::cout << "wrote " << sweep.rows.size() << " rows to " << (cfg.output_dir / "hit_rates.csv").string() << '\n';
    return 0;
}

int cmd_diagnose(const CommonOptions& o) {
    const auto cfg = resolve(o);
    const auto diag = run_diagnostics(cfg, thread_count(o));
    auto csv = open_out(cfg.output_dir, "diagnostics.csv");
    write_diagnostics_csv(csv, diag);
    open_out(cfg.output_dir, "diagnostics_report.json") << diag.report.dump(2) << '\n';
    std::cout << diag.report.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rasster: random sparse step-frequency radar simulation"};
    app.require_subcommand(1);
    bool show_isa = false;
    app.add_flag("--isa", show_isa, "Print the active SIMD kernel set");

    CommonOptions opts;
    auto* plan = app.add_subcommand("plan", "Emit frequency plans for the configured schemes");
    auto* map = app.add_subcommand("map", "Single-trial detection map");
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo hit-rate sweep");
    auto* diag = app.add_subcommand("diagnose", "Spark, coherence and bound report");
    for (auto* s : {plan, map, sweep, diag}) add_common(s, opts);

    CLI11_PARSE(app, argc, argv);
    if (show_isa) std::cerr << "kernels: " << (simd::active_isa() == simd::Isa::Avx2 ? "avx2" : "scalar") << '\n';

    try {
        if (plan->parsed()) return cmd_plan(opts);
        if (map->parsed()) return cmd_map(opts);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (diag->parsed()) return cmd_diagnose(opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
