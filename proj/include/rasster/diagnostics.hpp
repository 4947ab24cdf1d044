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

// Empirical checks of the dictionary guarantees (full spark, coherence
// tail) and the closed-form recoverable-sparsity bounds.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rasster/dictionary.hpp"
#include "rasster/waveform.hpp"

namespace rasster {

struct CoherenceReport {
    double mu = 0.0;
    std::size_t u = 0;  // attaining column pair
    std::size_t v = 0;
    std::size_t bound_K_coherence = 0;
    std::size_t bound_K_density = 0;
    double delta = 0.0;
};

// Fast path: mu = max over (dp, dq) != (0, 0) of |(1/N) sum_n e^{j2pi(dp d_n/P + dq n/Q)}|,
// i.e. the correlation of every column against column 0. Exact for
// real-valued carrier positions. UndefinedMetric when PQ == 1.
CoherenceReport mutual_coherence(const DictionaryMatrix& A);

// Ground truth: max over all column pairs of the normalized inner product.
CoherenceReport mutual_coherence_pairwise(const DictionaryMatrix& A);

struct CoherenceBounds {
    std::size_t K1 = 0;  // coherence route
    std::size_t K2 = 0;  // carrier-density route
    double K1_real = 0.0;
    double K2_real = 0.0;
};

// K1 = floor(1/2 sqrt(N / (2 (ln(2(P-1)(Q-1)) - ln delta))) + 1/2)
// K2 = floor(pi |I| / 2 + 1/2)
CoherenceBounds coherence_bounds(std::size_t N, std::size_t P, std::size_t Q, double delta,
                                 std::size_t card_I);

// mu plus both bounds for the dictionary's dimensions.
CoherenceReport coherence_report(const DictionaryMatrix& A, double delta, std::size_t card_I);

struct SparkOptions {
    // Enumerate every N-subset of columns when C(PQ, N) is at most this.
    std::uint64_t exhaustive_cap = 200'000;
    // Otherwise draw this many random N-subsets per plan.
    std::uint64_t samples = 10'000;
    // Continuous carrier positions are drawn from U[0, position_span).
    double position_span = 32.0;
};

struct SparkReport {
    std::size_t trials = 0;
    std::uint64_t submatrices_per_trial = 0;
    bool exhaustive = false;
    std::uint64_t failures = 0;           // singular N x N submatrices, all trials
    std::size_t failed_trials = 0;
    double min_singular_value = 0.0;      // smallest over everything checked
    double tolerance = 0.0;
};

// Checks N x N submatrices of the dictionary built from `positions`.
// A submatrix fails when its smallest singular value is <= 1e-8 sqrt(N).
SparkReport spark_check_positions(std::span<const double> positions, std::size_t P, std::size_t Q,
                                  std::uint64_t seed, const SparkOptions& options = {});

// Draws `trials` continuous plans of length N and checks each.
SparkReport spark_certify(std::size_t N, std::size_t P, std::size_t Q, std::size_t trials,
                          std::uint64_t seed, const SparkOptions& options = {});

struct TailCheck {
    std::size_t trials = 0;
    std::size_t exceedances = 0;
    double frequency = 0.0;
    double bound = 0.0;  // 2 (P-1)(Q-1) e^{-N eps^2 / 2}
    double epsilon = 0.0;
    double max_mu = 0.0;
    bool pass = false;
};

// Empirical P(mu >= epsilon) over sparse-random plans drawn from `subbands`.
TailCheck coherence_tail_check(const CarrierGrid& grid, const SubbandSet& subbands, std::size_t N,
                               std::size_t P, std::size_t Q, std::size_t trials, double epsilon,
                               std::uint64_t seed);

double coherence_tail_bound(std::size_t N, std::size_t P, std::size_t Q, double epsilon);

struct Cell {
    std::size_t p = 0;
    std::size_t q = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

// Fraction of truth targets hit: estimates within T_r range cells and T_d
// Doppler cells of any truth target, counted and divided by K (capped at 1).
// UndefinedMetric for an empty truth list.
double hit_rate(std::span<const Cell> truth, std::span<const Cell> estimates, std::size_t T_r = 1,
                std::size_t T_d = 1);

// seed,N,P,Q,mu,K1,K2,failures
struct CoherenceCsvRow {
    std::uint64_t seed = 0;
    std::size_t N = 0, P = 0, Q = 0;
    double mu = 0.0;
    std::size_t K1 = 0, K2 = 0;
    std::uint64_t failures = 0;
};
void write_coherence_csv(std::ostream& os, std::span<const CoherenceCsvRow> rows);

} // namespace rasster
