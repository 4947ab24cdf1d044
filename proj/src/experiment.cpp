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

#include "rasster/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "rasster/diagnostics.hpp"
#include "rasster/dictionary.hpp"
#include "rasster/error.hpp"
#include "rasster/measurement.hpp"
#include "rasster/parallel.hpp"
#include "rasster/recovery.hpp"
#include "rasster/rng.hpp"

namespace rasster {

std::string_view to_string(Scheme s) {
    switch (s) {
    case Scheme::SFW: return "SFW";
    case Scheme::RSF: return "RSF";
    case Scheme::RaSSteR: return "RaSSteR";
    }
    return "unknown";
}

Scheme scheme_from_string(std::string_view s) {
    if (s == "SFW" || s == "sfw") return Scheme::SFW;
    if (s == "RSF" || s == "rsf") return Scheme::RSF;
    if (s == "RaSSteR" || s == "rasster") return Scheme::RaSSteR;
    throw ConfigError("unknown scheme '" + std::string(s) + "'");
}

namespace {

// Seed-stream tags. Values are part of the reproducibility contract.
constexpr std::uint64_t kTagScene = 0x5ce7e;
constexpr std::uint64_t kTagPlan = 0x91a7;
constexpr std::uint64_t kTagNoise = 0x7015e;
constexpr std::uint64_t kTagInterference = 0x1f7e;
constexpr std::uint64_t kTagDiagnostics = 0xd1a6;

std::uint64_t scheme_tag(Scheme s) { return 0x5c0000 + static_cast<std::uint64_t>(s); }

// ------------------------------------------------------------ config parsing

// Walks one JSON object, remembering which keys were read so leftovers can
// be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    const nlohmann::json& at(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    std::string path(const std::string& key) const { return path_ + "." + key; }

    template <class T>
    void read(const std::string& key, T& out) {
        if (!has(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(path(key) + ": " + e.what());
        }
    }

    void finish() const {
        for (const auto& item : j_.items()) {
            if (!seen_.count(item.key())) throw ConfigError(path(item.key()) + ": unknown key");
        }
    }

private:
    const nlohmann::json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

double parse_db(const nlohmann::json& v, const std::string& path, bool allow_none,
                std::optional<double>& out) {
    if (v.is_number()) {
        out = v.get<double>();
        return *out;
    }
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf") {
            out = std::numeric_limits<double>::infinity();
            return *out;
        }
        if (allow_none && s == "none") {
            out.reset();
            return 0.0;
        }
    }
    if (allow_none && v.is_null()) {
        out.reset();
        return 0.0;
    }
    throw ConfigError(path + ": expected a number" + (allow_none ? ", \"inf\" or \"none\"" : " or \"inf\""));
}

SceneLayout parse_layout(const std::string& s, std::size_t per_bin, bool moving, const std::string& path) {
    if (s == "widely") return SceneLayout::widely(moving);
    if (s == "clustered") return SceneLayout::clustered(per_bin, moving);
    if (s == "single_bin") return SceneLayout::single_bin(moving);
    throw ConfigError(path + ": layout must be widely, clustered or single_bin");
}

} // namespace

void ExperimentConfig::validate() const {
    try {
        grid.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string("config.grid: ") + e.what());
    }
    if (schemes.empty()) throw ConfigError("config.schemes: at least one scheme required");
    if (P < 1 || Q < 1) throw ConfigError("config.P/Q: must be >= 1");
    if (N.empty()) throw ConfigError("config.N: at least one pulse count required");
    for (auto n : N) {
        if (n < 2) throw ConfigError("config.N: pulse counts must be >= 2");
    }
    if (!(total_power > 0.0)) throw ConfigError("config.total_power: must be positive");
    if (snr_db.empty()) throw ConfigError("config.snr_db: at least one SNR point required");
    if (sir_db.empty()) throw ConfigError("config.sir_db: at least one SIR point required");
    if (trials < 1) throw ConfigError("config.trials: must be >= 1");
    if (interference) {
        if (interference->M1 > interference->M2 || interference->M2 >= grid.M) {
            throw ConfigError("config.interference: need M1 <= M2 < M");
        }
        if (cognitive_subbands(*this).empty()) {
            throw ConfigError("config.interference: band leaves no carriers for the cognitive scheme");
        }
    }
    if (scene.layout.kind == LayoutKind::Clustered && scene.layout.per_bin < 1) {
        throw ConfigError("config.scene.per_bin: must be >= 1");
    }
    if (!(diagnostics.delta > 0.0 && diagnostics.delta < 1.0)) {
        throw ConfigError("config.diagnostics.delta: must lie in (0, 1)");
    }
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    ObjectReader root(j, "config");

    if (root.has("schemes")) {
        cfg.schemes.clear();
        for (const auto& s : root.at("schemes")) {
            if (!s.is_string()) throw ConfigError("config.schemes: entries must be strings");
            cfg.schemes.push_back(scheme_from_string(s.get<std::string>()));
        }
    }
    if (root.has("grid")) {
        ObjectReader g(root.at("grid"), "config.grid");
        g.read("f_c", cfg.grid.f_c);
        g.read("delta_f", cfg.grid.delta_f);
        g.read("M", cfg.grid.M);
        g.read("T", cfg.grid.T);
        g.read("T_p", cfg.grid.T_p);
        g.finish();
    }
    root.read("P", cfg.P);
    root.read("Q", cfg.Q);
    if (root.has("N")) {
        const auto& n = root.at("N");
        try {
            cfg.N = n.is_array() ? n.get<std::vector<std::size_t>>() : std::vector<std::size_t>{n.get<std::size_t>()};
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config.N: ") + e.what());
        }
    }
    root.read("total_power", cfg.total_power);
    if (root.has("scene")) {
        ObjectReader s(root.at("scene"), "config.scene");
        std::string layout = "widely";
        std::size_t per_bin = 1;
        bool moving = false;
        s.read("K", cfg.scene.K);
        s.read("layout", layout);
        s.read("per_bin", per_bin);
        s.read("moving", moving);
        if (s.has("file")) cfg.scene.file = s.at("file").get<std::string>();
        cfg.scene.layout = parse_layout(layout, per_bin, moving, s.path("layout"));
        s.finish();
    }
    if (root.has("snr_db")) {
        cfg.snr_db.clear();
        const auto& v = root.at("snr_db");
        const auto list = v.is_array() ? v : nlohmann::json::array({v});
        for (std::size_t i = 0; i < list.size(); ++i) {
            std::optional<double> x;
            parse_db(list[i], "config.snr_db[" + std::to_string(i) + "]", false, x);
            cfg.snr_db.push_back(*x);
        }
    }
    if (root.has("sir_db")) {
        cfg.sir_db.clear();
        const auto& v = root.at("sir_db");
        const auto list = v.is_array() ? v : nlohmann::json::array({v});
        for (std::size_t i = 0; i < list.size(); ++i) {
            std::optional<double> x;
            parse_db(list[i], "config.sir_db[" + std::to_string(i) + "]", true, x);
            cfg.sir_db.push_back(x);
        }
    }
    if (root.has("interference")) {
        const auto& iv = root.at("interference");
        if (!iv.is_null()) {
            ObjectReader r(iv, "config.interference");
            InterferenceBand band;
            if (!r.has("M1") || !r.has("M2")) throw ConfigError("config.interference: M1 and M2 required");
            r.read("M1", band.M1);
            r.read("M2", band.M2);
            r.finish();
            cfg.interference = band;
        }
    }
    root.read("trials", cfg.trials);
    root.read("seed", cfg.seed);
    if (root.has("rsf_mode")) {
        const auto m = root.at("rsf_mode").get<std::string>();
        if (m == "permutation") cfg.rsf_mode = RsfMode::Permutation;
        else if (m == "uniform") cfg.rsf_mode = RsfMode::Uniform;
        else if (m == "auto") cfg.rsf_mode = RsfMode::Auto;
        else throw ConfigError("config.rsf_mode: must be permutation, uniform or auto");
    }
    if (root.has("hit_tolerance")) {
        ObjectReader h(root.at("hit_tolerance"), "config.hit_tolerance");
        h.read("T_r", cfg.T_r);
        h.read("T_d", cfg.T_d);
        h.finish();
    }
    if (root.has("diagnostics")) {
        ObjectReader d(root.at("diagnostics"), "config.diagnostics");
        auto& ds = cfg.diagnostics;
        d.read("delta", ds.delta);
        d.read("trials", ds.trials);
        d.read("spark_trials", ds.spark_trials);
        d.read("spark_samples", ds.spark_samples);
        d.read("spark_exhaustive_cap", ds.spark_exhaustive_cap);
        d.read("position_span", ds.position_span);
        d.read("epsilon", ds.epsilon);
        d.read("tail_trials", ds.tail_trials);
        d.read("bounds_only", ds.bounds_only);
        d.finish();
    }
    root.read("dump_measurements", cfg.dump_measurements);
    root.read("export_dictionary", cfg.export_dictionary);
    if (root.has("output_dir")) cfg.output_dir = root.at("output_dir").get<std::string>();
    root.finish();
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    auto cfg = config_from_json(j);
    if (cfg.scene.file && cfg.scene.file->is_relative()) {
        cfg.scene.file = path.parent_path() / *cfg.scene.file;
    }
    return cfg;
}

SubbandSet cognitive_subbands(const ExperimentConfig& cfg) {
    if (!cfg.interference) return SubbandSet::full(cfg.grid.M);
    return SubbandSet::excluding(cfg.grid.M, cfg.interference->M1, cfg.interference->M2);
}

FrequencyPlan scheme_plan(const ExperimentConfig& cfg, Scheme scheme, std::size_t N, std::uint64_t seed) {
    switch (scheme) {
    case Scheme::SFW: return make_linear_plan(cfg.grid, N, cfg.total_power);
    case Scheme::RSF: {
        bool reuse = false;
        switch (cfg.rsf_mode) {
        case RsfMode::Permutation: reuse = false; break;
        case RsfMode::Uniform: reuse = true; break;
        case RsfMode::Auto: reuse = N < cfg.grid.M; break;
        }
        return make_random_full_plan(cfg.grid, N, cfg.total_power, seed, reuse);
    }
    case Scheme::RaSSteR: {
        const auto sb = cognitive_subbands(cfg);
        return make_sparse_random_plan(cfg.grid, sb, N, cfg.total_power, N > sb.cardinality(), seed);
    }
    }
    throw ConfigError("unknown scheme");
}

namespace {

TargetScene make_scene(const ExperimentConfig& cfg, const GridParams& gp, std::uint64_t seed) {
    if (cfg.scene.file) {
        std::ifstream in(*cfg.scene.file);
        if (!in) throw ConfigError("config.scene.file: cannot open " + cfg.scene.file->string());
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config.scene.file: ") + e.what());
        }
        return scene_from_json(j, gp);
    }
    return random_scene(gp, cfg.scene.K, cfg.scene.layout, seed);
}

struct BinOutcome {
    std::vector<Cell> truth;
    std::vector<Cell> estimates;
};

// One coarse bin through synthesis, noise, interference and OMP.
BinOutcome process_bin(const ExperimentConfig& cfg, const FrequencyPlan& plan, const DictionaryMatrix& A,
                       const GridParams& gp, std::span<const Target> targets, std::size_t k,
                       double snr_db, const std::optional<double>& sir_db, std::uint64_t stream,
                       MeasurementSet* dump = nullptr) {
    BinOutcome out;
    for (const auto& t : targets) out.truth.push_back({t.n, t.m});
    auto ms = MeasurementSet::from_clean(synthesize_echoes(targets, plan, gp));
    if (targets.empty()) {
        // Pure noise bin: unit-variance noise, nothing to calibrate against.
        Rng rng(derive_seed(stream, {kTagNoise}));
        for (auto& v : ms.y) v += rng.complex_normal(1.0);
        ms.sigma2 = 1.0;
    } else {
        if (std::isfinite(snr_db)) inject_noise(ms, snr_db, derive_seed(stream, {kTagNoise}));
        if (sir_db && cfg.interference) {
            inject_interference(ms, plan, cfg.interference->M1, cfg.interference->M2, *sir_db,
                                derive_seed(stream, {kTagInterference}));
        }
    }
    RecoveryConfig rc;
    rc.k_max = std::min(k, A.rows());
    rc.mode = StopMode::FixedK;
    std::vector<std::size_t> support;
    try {
        support = omp_recover(A, ms.y, rc).support;
    } catch (const NumericalDegeneracy& e) {
        support = e.partial_support();
    }
    for (auto u : support) out.estimates.push_back({u / gp.Q, u % gp.Q});
    if (dump) *dump = std::move(ms);
    return out;
}

bool within(const Cell& a, const Cell& b, std::size_t T_r, std::size_t T_d) {
    auto near = [](std::size_t x, std::size_t y, std::size_t tol) { return (x > y ? x - y : y - x) <= tol; };
    return near(a.p, b.p, T_r) && near(a.q, b.q, T_d);
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

DetectionMap run_detection_map(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.snr_db.size() != 1 || cfg.sir_db.size() != 1) {
        throw ConfigError("config.snr_db/sir_db: a detection map needs exactly one SNR and one SIR point");
    }
    const auto gp = derive_grid(cfg.grid, cfg.P, cfg.Q);
    DetectionMap map;
    map.scene = make_scene(cfg, gp, derive_seed(cfg.seed, {kTagScene}));
    const std::size_t N = cfg.N.front();

    auto bins = map.scene.bins();
    const bool empty_scene = bins.empty();
    if (empty_scene) bins.push_back(1);

    for (const auto scheme : cfg.schemes) {
        SchemeMapSummary sum;
        sum.scheme = scheme;
        const auto stream = derive_seed(cfg.seed, {scheme_tag(scheme)});
        FrequencyPlan plan;
        try {
            plan = scheme_plan(cfg, scheme, N, derive_seed(stream, {kTagPlan}));
        } catch (const InvalidPlan& e) {
            sum.skipped = e.what();
            map.summary.push_back(sum);
            continue;
        }
        const auto A = DictionaryMatrix::build(plan, cfg.P, cfg.Q);
        if (cfg.export_dictionary) {
            std::filesystem::create_directories(cfg.output_dir);
            std::ofstream os(cfg.output_dir / ("dictionary_" + std::string(to_string(scheme)) + ".csv"));
            write_dictionary_csv(os, A);
        }
        for (const auto bin : bins) {
            const auto targets = map.scene.in_bin(bin);
            MeasurementSet ms;
            const auto outcome = process_bin(cfg, plan, A, gp, targets, std::max<std::size_t>(1, targets.size()),
                                             cfg.snr_db.front(), cfg.sir_db.front(),
                                             derive_seed(stream, {bin}), cfg.dump_measurements ? &ms : nullptr);
            if (cfg.dump_measurements) {
                std::filesystem::create_directories(cfg.output_dir);
                std::ofstream os(cfg.output_dir / ("measurement_" + std::string(to_string(scheme)) + "_bin" +
                                                   std::to_string(bin) + ".csv"));
                write_measurement_csv(os, ms);
            }
            for (const auto& t : outcome.truth) map.rows.push_back({scheme, "truth", bin, t.p, t.q});
            for (const auto& e : outcome.estimates) {
                const bool hit = std::any_of(outcome.truth.begin(), outcome.truth.end(),
                                             [&](const Cell& t) { return within(t, e, cfg.T_r, cfg.T_d); });
                map.rows.push_back({scheme, hit ? "hit" : "fa", bin, e.p, e.q});
                ++(hit ? sum.hits : sum.false_alarms);
            }
            for (const auto& t : outcome.truth) {
                const bool found = std::any_of(outcome.estimates.begin(), outcome.estimates.end(),
                                               [&](const Cell& e) { return within(t, e, cfg.T_r, cfg.T_d); });
                if (!found) {
                    map.rows.push_back({scheme, "miss", bin, t.p, t.q});
                    ++sum.misses;
                }
            }
        }
        if (empty_scene) {
            sum.all_false_alarm = true;
        } else {
            sum.hit_rate = std::min(1.0, static_cast<double>(sum.hits) / static_cast<double>(map.scene.targets.size()));
        }
        map.summary.push_back(sum);
    }
    return map;
}

SweepResult run_hit_rate_sweep(const ExperimentConfig& cfg, std::size_t threads) {
    cfg.validate();
    if (!cfg.scene.file && cfg.scene.K < 1) throw ConfigError("config.scene.K: a sweep needs K >= 1");
    const auto gp = derive_grid(cfg.grid, cfg.P, cfg.Q);
    SweepResult result;

    for (std::size_t ni = 0; ni < cfg.N.size(); ++ni) {
        const std::size_t N = cfg.N[ni];
        for (const auto scheme : cfg.schemes) {
            // Feasibility is a property of (scheme, N); probe once.
            try {
                (void)scheme_plan(cfg, scheme, N, 0);
            } catch (const InvalidPlan& e) {
                result.skipped.push_back(std::string(to_string(scheme)) + " N=" + std::to_string(N) + ": " + e.what());
                continue;
            }
            for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
                for (std::size_t ii = 0; ii < cfg.sir_db.size(); ++ii) {
                    std::vector<double> rates(cfg.trials);
                    parallel_for(cfg.trials, threads, [&](std::size_t t) {
                        const auto scene = make_scene(cfg, gp, derive_seed(cfg.seed, {kTagScene, ni, t}));
                        const auto stream = derive_seed(cfg.seed, {scheme_tag(scheme), ni, si, ii, t});
                        const auto plan = scheme_plan(cfg, scheme, N, derive_seed(stream, {kTagPlan}));
                        const auto A = DictionaryMatrix::build(plan, cfg.P, cfg.Q);
                        double hits = 0.0;
                        for (const auto bin : scene.bins()) {
                            const auto targets = scene.in_bin(bin);
                            const auto o = process_bin(cfg, plan, A, gp, targets, targets.size(), cfg.snr_db[si],
                                                       cfg.sir_db[ii], derive_seed(stream, {bin}));
                            hits += hit_rate(o.truth, o.estimates, cfg.T_r, cfg.T_d) * static_cast<double>(targets.size());
                        }
                        rates[t] = hits / static_cast<double>(scene.targets.size());
                    });
                    double sum = 0.0;
                    for (double r : rates) sum += r;
                    const double mean = sum / static_cast<double>(rates.size());
                    double ss = 0.0;
                    for (double r : rates) ss += (r - mean) * (r - mean);
                    const double n = static_cast<double>(rates.size());
                    const double se = rates.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
                    result.rows.push_back({scheme, N, cfg.snr_db[si], cfg.sir_db[ii], cfg.trials, mean, se});
                }
            }
        }
    }
    return result;
}

DiagnosticsResult run_diagnostics(const ExperimentConfig& cfg, std::size_t threads) {
    cfg.validate();
    const auto& ds = cfg.diagnostics;
    const std::size_t N = cfg.N.front();
    const auto subbands = cognitive_subbands(cfg);
    DiagnosticsResult out;
    auto& rep = out.report;
    rep["N"] = N;
    rep["P"] = cfg.P;
    rep["Q"] = cfg.Q;
    rep["card_I"] = subbands.cardinality();
    rep["skipped"] = nlohmann::json::array();

    CoherenceBounds bounds;
    if (cfg.P >= 2 && cfg.Q >= 2) {
        bounds = coherence_bounds(N, cfg.P, cfg.Q, ds.delta, subbands.cardinality());
        rep["bounds"] = {{"delta", ds.delta},     {"K1", bounds.K1}, {"K1_real", bounds.K1_real},
                         {"K2", bounds.K2},       {"K2_real", bounds.K2_real}};
    } else {
        rep["skipped"].push_back("bounds: need P, Q >= 2");
    }

    if (ds.bounds_only) {
        out.rows.push_back({cfg.seed, std::nullopt, bounds.K1, bounds.K2, std::nullopt});
        rep["skipped"].push_back("matrix checks: bounds_only");
        return out;
    }

    SparkOptions so;
    so.samples = ds.spark_samples;
    so.exhaustive_cap = ds.spark_exhaustive_cap;
    so.position_span = ds.position_span;

    out.rows.resize(ds.trials);
    std::vector<std::string> skips(ds.trials);
    parallel_for(ds.trials, threads, [&](std::size_t t) {
        const auto seed = derive_seed(cfg.seed, {kTagDiagnostics, t});
        auto& row = out.rows[t];
        row.seed = seed;
        row.K1 = bounds.K1;
        row.K2 = bounds.K2;
        try {
            const auto plan = make_sparse_random_plan(cfg.grid, subbands, N, cfg.total_power,
                                                      N > subbands.cardinality(), seed);
            const auto A = DictionaryMatrix::build(plan, cfg.P, cfg.Q, BuildOptions{.allow_lazy = true});
            row.mu = mutual_coherence(A).mu;
            if (N <= cfg.P * cfg.Q) {
                row.spark_failures = spark_check_positions(plan.positions(), cfg.P, cfg.Q, derive_seed(seed, {1}), so).failures;
            } else {
                skips[t] = "spark: N > PQ";
            }
        } catch (const CapacityError& e) {
            skips[t] = std::string("capacity: ") + e.what();
        } catch (const InvalidPlan& e) {
            skips[t] = std::string("plan: ") + e.what();
        }
    });
    for (std::size_t t = 0; t < skips.size(); ++t) {
        if (!skips[t].empty()) rep["skipped"].push_back("trial " + std::to_string(t) + " " + skips[t]);
    }

    if (N <= cfg.P * cfg.Q && ds.spark_trials > 0) {
        const auto sc = spark_certify(N, cfg.P, cfg.Q, ds.spark_trials, derive_seed(cfg.seed, {kTagDiagnostics, 0x5a}), so);
        rep["spark_certification"] = {{"trials", sc.trials},
                                      {"submatrices_per_trial", sc.submatrices_per_trial},
                                      {"exhaustive", sc.exhaustive},
                                      {"failures", sc.failures},
                                      {"failed_trials", sc.failed_trials},
                                      {"min_singular_value", sc.min_singular_value},
                                      {"tolerance", sc.tolerance}};
    }
    if (cfg.P >= 2 && cfg.Q >= 2 && ds.tail_trials > 0) {
        const auto tc = coherence_tail_check(cfg.grid, subbands, N, cfg.P, cfg.Q, ds.tail_trials, ds.epsilon,
                                             derive_seed(cfg.seed, {kTagDiagnostics, 0x7a}));
        rep["coherence_tail"] = {{"trials", tc.trials},   {"epsilon", tc.epsilon},
                                 {"exceedances", tc.exceedances}, {"frequency", tc.frequency},
                                 {"bound", tc.bound},     {"max_mu", tc.max_mu},
                                 {"pass", tc.pass}};
    }
    return out;
}

void write_detections_csv(std::ostream& os, const DetectionMap& map) {
    os << "scheme,kind,p,q\n";
    for (const auto& r : map.rows) os << to_string(r.scheme) << ',' << r.kind << ',' << r.p << ',' << r.q << '\n';
}

void write_hit_rates_csv(std::ostream& os, const SweepResult& sweep) {
    os << "scheme,N,snr_db,sir_db,trials,mean,stderr\n";
    for (const auto& r : sweep.rows) {
        os << to_string(r.scheme) << ',' << r.N << ',' << format_double(r.snr_db) << ','
           << (r.sir_db ? format_double(*r.sir_db) : std::string("none")) << ',' << r.trials << ','
           << format_double(r.mean) << ',' << format_double(r.stderr_) << '\n';
    }
}

void write_diagnostics_csv(std::ostream& os, const DiagnosticsResult& diag) {
    os << "seed,mu,K1,K2,spark_failures\n";
    for (const auto& r : diag.rows) {
        os << r.seed << ',' << (r.mu ? format_double(*r.mu) : std::string("NA")) << ',' << r.K1 << ',' << r.K2
           << ',' << (r.spark_failures ? std::to_string(*r.spark_failures) : std::string("NA")) << '\n';
    }
}

nlohmann::json map_summary_json(const DetectionMap& map) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : map.summary) {
        nlohmann::json e{{"scheme", to_string(s.scheme)},
                         {"hits", s.hits},
                         {"misses", s.misses},
                         {"false_alarms", s.false_alarms},
                         {"all_false_alarm", s.all_false_alarm}};
        e["hit_rate"] = s.hit_rate ? nlohmann::json(*s.hit_rate) : nlohmann::json(nullptr);
        if (!s.skipped.empty()) e["skipped"] = s.skipped;
        j.push_back(e);
    }
    return {{"schemes", j}, {"scene", scene_to_json(map.scene)}};
}

} // namespace rasster
