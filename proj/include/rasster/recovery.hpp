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

// Per-coarse-bin sparse recovery: orthogonal matching pursuit, an
// exhaustive l0 oracle for small instances, and support decoding.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rasster/dictionary.hpp"
#include "rasster/scene.hpp"

namespace rasster {

enum class StopMode { FixedK, ResidualThreshold };

struct RecoveryConfig {
    std::size_t k_max = 1;
    double residual_tol = 0.0;  // eta, used by ResidualThreshold
    StopMode mode = StopMode::FixedK;

    void validate(std::size_t N) const;
};

// Noise-floor stopping radius sigma * sqrt(N + 2 sqrt(N log N)).
double default_residual_tol(double sigma, std::size_t N);

struct DecodedTarget {
    std::size_t u = 0;
    std::size_t p = 0;  // range index
    std::size_t q = 0;  // Doppler index
    double range_m = 0.0;
    double velocity_mps = 0.0;
    std::complex<double> beta;
};

struct RecoveryReport {
    std::vector<std::size_t> support;           // selection order
    std::vector<std::complex<double>> coefficients;
    std::vector<DecodedTarget> decoded;          // filled when a grid is supplied
    double residual_norm = 0.0;
    std::vector<double> residual_history;        // ||r|| after each iteration, starting with ||y||
    std::size_t iterations = 0;
};

// Greedy pursuit: pick argmax_u |a_u^H r| (ties to the lowest index),
// refit least squares on the support by QR, update the residual. Stops
// after k_max atoms (FixedK), when ||r|| <= residual_tol
// (ResidualThreshold), or once the residual vanishes relative to ||y||.
// Throws NumericalDegeneracy carrying the accepted support if a refit
// becomes rank deficient.
RecoveryReport omp_recover(const DictionaryMatrix& A, std::span<const cplx> y,
                           const RecoveryConfig& config);

// Same, and decodes the support on `grid`. Coefficients are divided by
// `amplitude` to give gamma before conversion to beta.
RecoveryReport omp_recover(const DictionaryMatrix& A, std::span<const cplx> y,
                           const RecoveryConfig& config, const GridParams& grid,
                           double amplitude = 1.0);

struct L0Result {
    std::vector<std::size_t> support;  // ascending
    double residual_norm = 0.0;
    std::size_t attaining = 0;         // subsets with residual <= tol
    bool unique = false;               // attaining == 1
    std::uint64_t subsets_examined = 0;
};

inline constexpr std::uint64_t kDefaultOracleCap = 20'000'000;

// Minimizes the least-squares residual over every K-subset of columns.
// Throws OracleInfeasible when C(PQ, K) exceeds `cap`.
L0Result exhaustive_l0(const DictionaryMatrix& A, std::span<const cplx> y, std::size_t K, double tol,
                       std::uint64_t cap = kDefaultOracleCap);

// u -> (p, q) = (floor(u/Q), u mod Q) -> physical range, velocity and beta.
std::vector<DecodedTarget> decode_support(std::span<const std::size_t> support,
                                          std::span<const std::complex<double>> coefficients,
                                          const GridParams& grid, double amplitude = 1.0);

// u,p,q,range_m,velocity_mps,re_beta,im_beta
void write_recovery_csv(std::ostream& os, const RecoveryReport& report);

} // namespace rasster
