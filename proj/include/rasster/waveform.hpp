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

// Carrier-frequency sequences for linear stepped-frequency (SFW), random
// stepped-frequency over the full band (RSF) and random sparse
// stepped-frequency (RaSSteR) bursts.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rasster {

inline constexpr double kSpeedOfLight = 3.0e8;

// Carrier n transmits at f_c + d_n * delta_f with d_n in [0, M-1].
struct CarrierGrid {
    double f_c = 690e6;      // Hz
    double delta_f = 2.5e6;  // Hz
    std::size_t M = 60;      // available carriers
    double T = 62.5e-6;      // pulse repetition interval (s)
    double T_p = 0.4e-6;     // pulse width (s)

    // Throws InvalidGrid on any violated invariant, including
    // delta_f > 1/T_p (range profile would be ambiguous within a coarse bin).
    void validate() const;

    double frequency(double index) const { return f_c + index * delta_f; }

    friend bool operator==(const CarrierGrid&, const CarrierGrid&) = default;
};

// Allowed carrier indices as sorted, disjoint, inclusive ranges.
class SubbandSet {
public:
    using Interval = std::pair<std::size_t, std::size_t>;

    SubbandSet() = default;

    // Throws InvalidPlan unless intervals are sorted, disjoint, non-empty
    // and inside [0, M-1].
    SubbandSet(std::vector<Interval> intervals, std::size_t M);

    static SubbandSet full(std::size_t M);

    // Full band with [M1, M2] removed.
    static SubbandSet excluding(std::size_t M, std::size_t M1, std::size_t M2);

    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    std::size_t cardinality() const noexcept { return cardinality_; }
    bool empty() const noexcept { return cardinality_ == 0; }
    bool contains(std::size_t index) const noexcept;

    std::size_t lowest() const;
    std::size_t highest() const;

    // All allowed indices in increasing order.
    std::vector<std::size_t> indices() const;

    // Indices a such that both a and a+1 are allowed.
    std::vector<std::size_t> adjacencies() const;

    friend bool operator==(const SubbandSet&, const SubbandSet&) = default;

private:
    std::vector<Interval> intervals_;
    std::size_t cardinality_ = 0;
};

enum class PlanKind { Linear, RandomFull, SparseRandom };

std::string_view to_string(PlanKind kind);
PlanKind plan_kind_from_string(std::string_view s);

struct FrequencyPlan {
    PlanKind kind = PlanKind::Linear;
    CarrierGrid grid;
    SubbandSet subbands;
    std::vector<std::size_t> d;  // carrier index per pulse
    double total_power = 1.0;    // P_t, summed over the burst
    double amplitude = 1.0;      // sqrt(P_t / N)
    bool reuse = false;
    std::optional<std::uint64_t> seed;

    std::size_t N() const noexcept { return d.size(); }

    // d as doubles, the form the dictionary builder consumes.
    std::vector<double> positions() const { return {d.begin(), d.end()}; }

    // Re-checks every plan invariant; throws InvalidPlan.
    void validate() const;

    friend bool operator==(const FrequencyPlan&, const FrequencyPlan&) = default;
};

// d_n = n. Throws InvalidPlan when N > M or N == 0.
FrequencyPlan make_linear_plan(const CarrierGrid& grid, std::size_t N, double total_power);

// Without reuse: a random permutation of 0..M-1 followed by N-M uniform
// draws (requires N >= M). With reuse: N uniform draws with replacement
// over all M carriers, any N >= 1.
FrequencyPlan make_random_full_plan(const CarrierGrid& grid, std::size_t N, double total_power,
                                    std::uint64_t seed, bool reuse = false);

// Sparse selection from `subbands`: the lowest and highest allowed
// carriers, one adjacent pair chosen uniformly among allowed adjacencies,
// the rest uniform over the allowed set (with replacement iff `reuse`).
// Pulse order is a uniform shuffle of the selection.
FrequencyPlan make_sparse_random_plan(const CarrierGrid& grid, const SubbandSet& subbands,
                                      std::size_t N, double total_power, bool reuse,
                                      std::uint64_t seed);

// Span between the extreme used carriers (Hz). UndefinedMetric with fewer
// than two distinct carriers.
double effective_bandwidth(const FrequencyPlan& plan);

// Smallest gap between distinct used carriers (Hz).
double effective_step(const FrequencyPlan& plan);

// Pulses whose carrier index lies in [M1, M2].
std::vector<std::size_t> interference_pulse_set(const FrequencyPlan& plan, std::size_t M1,
                                                std::size_t M2);

void to_json(nlohmann::json& j, const CarrierGrid& grid);
void from_json(const nlohmann::json& j, CarrierGrid& grid);

nlohmann::json plan_to_json(const FrequencyPlan& plan);
FrequencyPlan plan_from_json(const nlohmann::json& j);

// n,d,frequency_hz,amplitude
void write_plan_csv(std::ostream& os, const FrequencyPlan& plan);

} // namespace rasster
