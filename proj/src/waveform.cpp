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

#include "rasster/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "rasster/error.hpp"
#include "rasster/rng.hpp"

namespace rasster {

void CarrierGrid::validate() const {
    if (!(f_c > 0.0) || !std::isfinite(f_c)) throw InvalidGrid("carrier grid: f_c must be positive");
    if (!(delta_f > 0.0) || !std::isfinite(delta_f)) {
        throw InvalidGrid("carrier grid: delta_f must be positive");
    }
    if (M < 2) throw InvalidGrid("carrier grid: need at least 2 carriers");
    if (!(T_p > 0.0) || !(T_p <= T) || !std::isfinite(T)) {
        throw InvalidGrid("carrier grid: require 0 < T_p <= T");
    }
    // delta_f <= 1/T_p, with slack for the decimal representation of
    // parameter pairs sitting exactly on the boundary (2.5 MHz, 0.4 us).
    if (delta_f * T_p > 1.0 + 1e-12) {
        throw InvalidGrid("carrier grid: delta_f exceeds 1/T_p, range profile is ambiguous");
    }
}

// ---------------------------------------------------------------- subbands

SubbandSet::SubbandSet(std::vector<Interval> intervals, std::size_t M)
    : intervals_(std::move(intervals)) {
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto [lo, hi] = intervals_[i];
        if (lo > hi) throw InvalidPlan("subband interval is empty");
        if (hi >= M) throw InvalidPlan("subband interval exceeds carrier count");
        if (i > 0 && lo <= intervals_[i - 1].second) {
            throw InvalidPlan("subband intervals must be sorted and disjoint");
        }
        cardinality_ += hi - lo + 1;
    }
}

SubbandSet SubbandSet::full(std::size_t M) {
    if (M == 0) return {};
    return SubbandSet({{0, M - 1}}, M);
}

SubbandSet SubbandSet::excluding(std::size_t M, std::size_t M1, std::size_t M2) {
    if (M1 > M2 || M2 >= M) throw InvalidPlan("interference band must satisfy M1 <= M2 < M");
    std::vector<Interval> iv;
    if (M1 > 0) iv.emplace_back(0, M1 - 1);
    if (M2 + 1 < M) iv.emplace_back(M2 + 1, M - 1);
    return SubbandSet(std::move(iv), M);
}

bool SubbandSet::contains(std::size_t index) const noexcept {
    return std::any_of(intervals_.begin(), intervals_.end(),
                       [&](const Interval& iv) { return iv.first <= index && index <= iv.second; });
}

std::size_t SubbandSet::lowest() const {
    if (empty()) throw InvalidPlan("empty subband set");
    return intervals_.front().first;
}

std::size_t SubbandSet::highest() const {
    if (empty()) throw InvalidPlan("empty subband set");
    return intervals_.back().second;
}

std::vector<std::size_t> SubbandSet::indices() const {
    std::vector<std::size_t> out;
    out.reserve(cardinality_);
    for (const auto& [lo, hi] : intervals_) {
        for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> SubbandSet::adjacencies() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < intervals_.size(); ++k) {
        const auto [lo, hi] = intervals_[k];
        for (std::size_t i = lo; i < hi; ++i) out.push_back(i);
        // Touching intervals ([..,a] and [a+1,..]) also form an adjacency.
        if (k + 1 < intervals_.size() && intervals_[k + 1].first == hi + 1) out.push_back(hi);
    }
    return out;
}

// ------------------------------------------------------------------- plans

std::string_view to_string(PlanKind kind) {
    switch (kind) {
    case PlanKind::Linear: return "linear";
    case PlanKind::RandomFull: return "random_full";
    case PlanKind::SparseRandom: return "sparse_random";
    }
    return "unknown";
}

PlanKind plan_kind_from_string(std::string_view s) {
    if (s == "linear") return PlanKind::Linear;
    if (s == "random_full") return PlanKind::RandomFull;
    if (s == "sparse_random") return PlanKind::SparseRandom;
    throw InvalidPlan("unknown plan kind '" + std::string(s) + "'");
}

namespace {

double amplitude_for(double total_power, std::size_t N) {
    return std::sqrt(total_power / static_cast<double>(N));
}

void check_power(double total_power) {
    if (!(total_power > 0.0) || !std::isfinite(total_power)) {
        throw InvalidPlan("total burst power must be positive");
    }
}

} // namespace

void FrequencyPlan::validate() const {
    grid.validate();
    check_power(total_power);
    if (d.empty()) throw InvalidPlan("plan has no pulses");
    if (subbands.empty()) throw InvalidPlan("plan has no allowed carriers");
    for (auto idx : d) {
        if (!subbands.contains(idx)) throw InvalidPlan("carrier index outside allowed subbands");
    }
    if (kind == PlanKind::Linear) {
        if (N() > grid.M) throw InvalidPlan("linear plan longer than carrier count");
        for (std::size_t n = 0; n < N(); ++n) {
            if (d[n] != n) throw InvalidPlan("linear plan must satisfy d_n = n");
        }
    }
    if (kind == PlanKind::SparseRandom && !reuse) {
        auto sorted = d;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw InvalidPlan("sparse plan without reuse repeats a carrier");
        }
    }
    if (std::abs(amplitude * amplitude * static_cast<double>(N()) - total_power) >
        1e-12 * total_power) {
        throw InvalidPlan("amplitude does not conserve total burst power");
    }
}

FrequencyPlan make_linear_plan(const CarrierGrid& grid, std::size_t N, double total_power) {
    grid.validate();
    check_power(total_power);
    if (N == 0) throw InvalidPlan("linear plan needs at least one pulse");
    if (N > grid.M) throw InvalidPlan("linear plan needs N <= M");
    FrequencyPlan plan;
    plan.kind = PlanKind::Linear;
    plan.grid = grid;
    plan.subbands = SubbandSet::full(grid.M);
    plan.d.resize(N);
    for (std::size_t n = 0; n < N; ++n) plan.d[n] = n;
    plan.total_power = total_power;
    plan.amplitude = amplitude_for(total_power, N);
    return plan;
}

FrequencyPlan make_random_full_plan(const CarrierGrid& grid, std::size_t N, double total_power,
                                    std::uint64_t seed, bool reuse) {
    grid.validate();
    check_power(total_power);
    if (N == 0) throw InvalidPlan("random plan needs at least one pulse");
    if (!reuse && N < grid.M) {
        throw InvalidPlan("full-band random plan without reuse needs N >= M");
    }
    Rng rng(seed);
    FrequencyPlan plan;
    plan.kind = PlanKind::RandomFull;
    plan.grid = grid;
    plan.subbands = SubbandSet::full(grid.M);
    plan.reuse = reuse;
    plan.seed = seed;
    plan.d.reserve(N);
    if (!reuse) {
        for (std::size_t m = 0; m < grid.M; ++m) plan.d.push_back(m);
        rng.shuffle(plan.d.begin(), plan.d.end());
    }
    while (plan.d.size() < N) plan.d.push_back(static_cast<std::size_t>(rng.below(grid.M)));
    plan.total_power = total_power;
    plan.amplitude = amplitude_for(total_power, N);
    return plan;
}

FrequencyPlan make_sparse_random_plan(const CarrierGrid& grid, const SubbandSet& subbands,
                                      std::size_t N, double total_power, bool reuse,
                                      std::uint64_t seed) {
    grid.validate();
    check_power(total_power);
    if (subbands.empty()) throw InvalidPlan("sparse plan: subband set is empty");
    if (subbands.highest() >= grid.M) throw InvalidPlan("sparse plan: subbands exceed grid");
    if (N == 0) throw InvalidPlan("sparse plan needs at least one pulse");
    if (!reuse && N > subbands.cardinality()) {
        throw InvalidPlan("sparse plan: N exceeds allowed carriers and reuse is disabled");
    }
    const std::size_t lo = subbands.lowest();
    const std::size_t hi = subbands.highest();
    if (lo != hi && N < 2) throw InvalidPlan("sparse plan needs N >= 2 to hold both band edges");

    Rng rng(seed);
    std::vector<std::size_t> chosen;
    chosen.reserve(N);
    auto used = [&](std::size_t i) { return std::find(chosen.begin(), chosen.end(), i) != chosen.end(); };

    chosen.push_back(lo);
    if (hi != lo) chosen.push_back(hi);

    // One adjacent pair, restricted to pairs that fit in the remaining slots.
    const std::size_t slots = N - chosen.size();
    std::vector<std::size_t> candidates;
    for (auto a : subbands.adjacencies()) {
        const std::size_t cost = (used(a) ? 0 : 1) + (used(a + 1) ? 0 : 1);
        if (cost <= slots) candidates.push_back(a);
    }
    if (!candidates.empty()) {
        const auto a = candidates[rng.below(candidates.size())];
        if (!used(a)) chosen.push_back(a);
        if (!used(a + 1)) chosen.push_back(a + 1);
    }

    const auto allowed = subbands.indices();
    if (reuse) {
        while (chosen.size() < N) chosen.push_back(allowed[rng.below(allowed.size())]);
    } else {
        std::vector<std::size_t> pool;
        pool.reserve(allowed.size());
        for (auto i : allowed) {
            if (!used(i)) pool.push_back(i);
        }
        // Partial Fisher-Yates over the unused carriers.
        for (std::size_t k = 0; chosen.size() < N; ++k) {
            const auto j = k + rng.below(pool.size() - k);
            std::swap(pool[k], pool[j]);
            chosen.push_back(pool[k]);
        }
    }
    rng.shuffle(chosen.begin(), chosen.end());

    FrequencyPlan plan;
    plan.kind = PlanKind::SparseRandom;
    plan.grid = grid;
    plan.subbands = subbands;
    plan.d = std::move(chosen);
    plan.reuse = reuse;
    plan.seed = seed;
    plan.total_power = total_power;
    plan.amplitude = amplitude_for(total_power, N);
    return plan;
}

namespace {

std::vector<std::size_t> distinct_carriers(const FrequencyPlan& plan) {
    auto u = plan.d;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    if (u.size() < 2) throw UndefinedMetric("need at least two distinct carriers");
    return u;
}

} // namespace

double effective_bandwidth(const FrequencyPlan& plan) {
    const auto u = distinct_carriers(plan);
    return static_cast<double>(u.back() - u.front()) * plan.grid.delta_f;
}

double effective_step(const FrequencyPlan& plan) {
    const auto u = distinct_carriers(plan);
    std::size_t gap = u.back() - u.front();
    for (std::size_t i = 1; i < u.size(); ++i) gap = std::min(gap, u[i] - u[i - 1]);
    return static_cast<double>(gap) * plan.grid.delta_f;
}

std::vector<std::size_t> interference_pulse_set(const FrequencyPlan& plan, std::size_t M1,
                                                std::size_t M2) {
    if (M1 > M2 || M2 >= plan.grid.M) {
        throw DomainError("interference band must satisfy 0 <= M1 <= M2 <= M-1");
    }
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < plan.N(); ++n) {
        if (plan.d[n] >= M1 && plan.d[n] <= M2) out.push_back(n);
    }
    return out;
}

// ------------------------------------------------------------------ records

void to_json(nlohmann::json& j, const CarrierGrid& grid) {
    j = nlohmann::json{{"f_c", grid.f_c}, {"delta_f", grid.delta_f}, {"M", grid.M},
                       {"T", grid.T},     {"T_p", grid.T_p}};
}

void from_json(const nlohmann::json& j, CarrierGrid& grid) {
    grid.f_c = j.at("f_c").get<double>();
    grid.delta_f = j.at("delta_f").get<double>();
    grid.M = j.at("M").get<std::size_t>();
    grid.T = j.at("T").get<double>();
    grid.T_p = j.at("T_p").get<double>();
}

nlohmann::json plan_to_json(const FrequencyPlan& plan) {
    nlohmann::json sb = nlohmann::json::array();
    for (const auto& [lo, hi] : plan.subbands.intervals()) sb.push_back({lo, hi});
    nlohmann::json j;
    j["kind"] = to_string(plan.kind);
    j["f_c"] = plan.grid.f_c;
    j["delta_f"] = plan.grid.delta_f;
    j["M"] = plan.grid.M;
    j["N"] = plan.N();
    j["T"] = plan.grid.T;
    j["T_p"] = plan.grid.T_p;
    j["P_t"] = plan.total_power;
    j["reuse"] = plan.reuse;
    j["subbands"] = sb;
    j["seed"] = plan.seed ? nlohmann::json(*plan.seed) : nlohmann::json(nullptr);
    j["d"] = plan.d;
    return j;
}

FrequencyPlan plan_from_json(const nlohmann::json& j) {
    try {
        FrequencyPlan plan;
        plan.kind = plan_kind_from_string(j.at("kind").get<std::string>());
        from_json(j, plan.grid);
        std::vector<SubbandSet::Interval> iv;
        for (const auto& e : j.at("subbands")) iv.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
        plan.subbands = SubbandSet(std::move(iv), plan.grid.M);
        plan.d = j.at("d").get<std::vector<std::size_t>>();
        if (j.at("N").get<std::size_t>() != plan.d.size()) throw InvalidPlan("plan record: N != len(d)");
        plan.total_power = j.at("P_t").get<double>();
        plan.reuse = j.value("reuse", false);
        if (j.contains("seed") && !j.at("seed").is_null()) plan.seed = j.at("seed").get<std::uint64_t>();
        plan.amplitude = std::sqrt(plan.total_power / static_cast<double>(plan.d.size()));
        plan.validate();
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidPlan(std::string("plan record: ") + e.what());
    }
}

void write_plan_csv(std::ostream& os, const FrequencyPlan& plan) {
    os << "n,d,frequency_hz,amplitude\n";
    char buf[128];
    for (std::size_t n = 0; n < plan.N(); ++n) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", n, plan.d[n],
                      plan.grid.frequency(static_cast<double>(plan.d[n])), plan.amplitude);
        os << buf;
    }
}

} // namespace rasster
