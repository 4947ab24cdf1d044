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

// Sparse localization dictionary A (N x PQ) for one coarse range bin.
//
// Column u = p*Q + q holds exp(-j 2 pi (p d_n / P + q n / Q)), n = 0..N-1,
// so A = [diag(r_0) D, diag(r_1) D, ..., diag(r_{P-1}) D] with range factor
// R[n,p] = exp(-j 2 pi p d_n / P) and Doppler factor D[n,q] = exp(-j 2 pi q n / Q).
//
// Carrier positions are real-valued so the same builder serves integer
// plans and the continuous draws used for spark certification.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "rasster/waveform.hpp"

namespace rasster {

using cplx = std::complex<double>;

enum class BuildMethod {
    Hadamard,  // R and D first, A as their column-wise Hadamard product
    Direct,    // each entry from its summed phase
};

struct BuildOptions {
    BuildMethod method = BuildMethod::Hadamard;
    std::size_t memory_budget_bytes = std::size_t{512} << 20;
    // Above the budget, keep only R and D and generate columns on demand.
    // With lazy disabled an over-budget request throws CapacityError.
    bool allow_lazy = true;
};

class DictionaryMatrix {
public:
    static DictionaryMatrix build(std::span<const double> positions, std::size_t P, std::size_t Q,
                                  const BuildOptions& options = {});

    static DictionaryMatrix build(const FrequencyPlan& plan, std::size_t P, std::size_t Q,
                                  const BuildOptions& options = {});

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return P_ * Q_; }
    std::size_t P() const noexcept { return P_; }
    std::size_t Q() const noexcept { return Q_; }
    bool materialized() const noexcept { return !a_.empty() || cols() * rows_ == 0; }
    std::span<const double> positions() const noexcept { return positions_; }

    // Column-major storage; empty when lazy.
    std::span<const cplx> data() const noexcept { return a_; }
    std::span<const cplx> range_factor() const noexcept { return r_; }
    std::span<const cplx> doppler_factor() const noexcept { return d_; }

    cplx entry(std::size_t n, std::size_t u) const;

    // Writes column u into out (size rows()).
    void column(std::size_t u, std::span<cplx> out) const;
    std::vector<cplx> column(std::size_t u) const;

    // out_u = |a_u^H r|^2 for all columns.
    void correlate_abs2(std::span<const cplx> r, std::span<double> out) const;

    // A x for a sparse x given as (column, value) pairs.
    std::vector<cplx> apply_sparse(std::span<const std::size_t> support,
                                   std::span<const cplx> values) const;

private:
    std::size_t rows_ = 0;
    std::size_t P_ = 0;
    std::size_t Q_ = 0;
    std::vector<double> positions_;
    std::vector<cplx> r_;  // rows x P
    std::vector<cplx> d_;  // rows x Q
    std::vector<cplx> a_;  // rows x PQ, or empty (lazy)
};

// Column index <-> (range, Doppler) index, range-major.
inline std::size_t encode_cell(std::size_t p, std::size_t q, std::size_t Q) { return p * Q + q; }

// Exported for debugging only: n,u,re,im per entry.
void write_dictionary_csv(std::ostream& os, const DictionaryMatrix& A);

} // namespace rasster
