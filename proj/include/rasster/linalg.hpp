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

// Small dense complex least squares by Householder QR.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rasster::linalg {

using cplx = std::complex<double>;

// Factorizes an m x k column-major matrix (k <= m). Columns whose
// remaining norm after earlier reflections falls below
// rank_tol * (original column norm) are flagged dependent and skipped,
// so residual norms stay meaningful on rank-deficient inputs.
//
// The object keeps its buffers between calls; reuse one per thread.
class HouseholderQr {
public:
    explicit HouseholderQr(double rank_tol = 1e-10) : rank_tol_(rank_tol) {}

    void factor(std::span<const cplx> a, std::size_t rows, std::size_t cols);

    std::size_t rank() const noexcept { return rank_; }
    bool full_rank() const noexcept { return rank_ == cols_; }

    // ||y - A x_ls||_2 without forming x.
    double residual_norm(std::span<const cplx> y);

    // Least-squares coefficients. Requires full_rank().
    std::vector<cplx> solve(std::span<const cplx> y);

private:
    void apply_reflectors(std::vector<cplx>& v) const;

    double rank_tol_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t rank_ = 0;
    std::vector<cplx> qr_;          // reflector vectors below the diagonal, R on and above
    std::vector<cplx> diag_;        // R diagonal per accepted column
    std::vector<std::size_t> step_; // column -> reflector step, or npos if dependent
    std::vector<cplx> work_;
};

} // namespace rasster::linalg
