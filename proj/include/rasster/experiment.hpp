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

#pragma once

// Configuration-driven experiment runner behind the command-line tool.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rasster/scene.hpp"
#include "rasster/waveform.hpp"

namespace rasster {

enum class Scheme { SFW, RSF, RaSSteR };

std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view s);

enum class RsfMode { Permutation, Uniform, Auto };

struct InterferenceBand {
    std::size_t M1 = 0;
    std::size_t M2 = 0;
};

struct SceneSpec {
    std::size_t K = 3;
    SceneLayout layout = SceneLayout::widely(false);
    std::optional<std::filesystem::path> file;  // overrides K/layout when set
};

struct DiagnosticsSpec {
    double delta = 0.1;
    std::size_t trials = 10;          // plans examined (one diagnostics.csv row each)
    std::size_t spark_trials = 20;    // continuous-position plans for certification
    std::uint64_t spark_samples = 1000;
    std::uint64_t spark_exhaustive_cap = 200'000;
    double position_span = 32.0;
    double epsilon = 0.6;
    std::size_t tail_trials = 100;
    bool bounds_only = false;
};

// Non-finite SNR (+inf) disables noise; an unset SIR disables interference.
struct ExperimentConfig {
    std::vector<Scheme> schemes{Scheme::SFW, Scheme::RSF, Scheme::RaSSteR};
    CarrierGrid grid{690e6, 2.5e6, 32, 62.5e-6, 0.4e-6};
    std::size_t P = 25;
    std::size_t Q = 25;
    std::vector<std::size_t> N{32};
    double total_power = 1.0;
    SceneSpec scene;
    std::vector<double> snr_db{-30.0};
    std::vector<std::optional<double>> sir_db{std::nullopt};
    std::optional<InterferenceBand> interference;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    RsfMode rsf_mode = RsfMode::Auto;
    std::size_t T_r = 1;
    std::size_t T_d = 1;
    DiagnosticsSpec diagnostics;
    bool dump_measurements = false;
    bool export_dictionary = false;
    std::filesystem::path output_dir = "out";

    // Cross-field consistency; throws ConfigError naming the field path.
    void validate() const;
};

// Unknown keys anywhere are rejected with their path.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

// Plan for one scheme. Throws InvalidPlan when the scheme cannot be built
// at this N (e.g. SFW with N > M, RSF permutation with N < M).
FrequencyPlan scheme_plan(const ExperimentConfig& cfg, Scheme scheme, std::size_t N, std::uint64_t seed);

// Allowed carriers for the cognitive scheme: full band minus the
// interference band when one is configured.
SubbandSet cognitive_subbands(const ExperimentConfig& cfg);

struct DetectionRow {
    Scheme scheme;
    std::string kind;  // truth | hit | miss | fa
    std::size_t coarse_bin = 0;
    std::size_t p = 0;
    std::size_t q = 0;
};

struct SchemeMapSummary {
    Scheme scheme;
    std::optional<double> hit_rate;  // unset for an empty scene
    std::size_t hits = 0, misses = 0, false_alarms = 0;
    bool all_false_alarm = false;
    std::string skipped;  // reason, when the plan was infeasible
};

struct DetectionMap {
    std::vector<DetectionRow> rows;
    std::vector<SchemeMapSummary> summary;
    TargetScene scene;
};

DetectionMap run_detection_map(const ExperimentConfig& cfg);

struct HitRateRow {
    Scheme scheme;
    std::size_t N = 0;
    double snr_db = 0.0;
    std::optional<double> sir_db;
    std::size_t trials = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
};

struct SweepResult {
    std::vector<HitRateRow> rows;
    std::vector<std::string> skipped;  // one line per skipped (scheme, N)
};

SweepResult run_hit_rate_sweep(const ExperimentConfig& cfg, std::size_t threads = 1);

struct DiagnosticsRow {
    std::uint64_t seed = 0;
    std::optional<double> mu;
    std::size_t K1 = 0, K2 = 0;
    std::optional<std::uint64_t> spark_failures;
};

struct DiagnosticsResult {
    std::vector<DiagnosticsRow> rows;
    nlohmann::json report;  // spark certification, tail check, bounds, skips
};

DiagnosticsResult run_diagnostics(const ExperimentConfig& cfg, std::size_t threads = 1);

// CSV writers for the files the CLI emits.
void write_detections_csv(std::ostream& os, const DetectionMap& map);  // scheme,kind,p,q
void write_hit_rates_csv(std::ostream& os, const SweepResult& sweep);  // scheme,N,snr_db,sir_db,trials,mean,stderr
void write_diagnostics_csv(std::ostream& os, const DiagnosticsResult& diag);  // seed,mu,K1,K2,spark_failures

nlohmann::json map_summary_json(const DetectionMap& map);

} // namespace rasster
