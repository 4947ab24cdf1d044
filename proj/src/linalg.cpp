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

#include "rasster/linalg.hpp"

#include <cmath>
#include <limits>

#include "rasster/simd/kernels.hpp"

namespace rasster::linalg {

namespace {
constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
}

void HouseholderQr::factor(std::span<const cplx> a, std::size_t rows, std::size_t cols) {
    rows_ = rows;
    cols_ = cols;
    rank_ = 0;
    qr_.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(rows * cols));
    diag_.assign(cols, cplx{});
    step_.assign(cols, npos);
    const auto& k = simd::kernels();

    for (std::size_t j = 0; j < cols; ++j) {
        cplx* col = qr_.data() + j * rows;
        const double original = std::sqrt(k.energy(a.data() + j * rows, rows));
        const std::size_t s = rank_;  // next reflector acts on rows s..m-1
        if (s >= rows) break;
        const double tail = std::sqrt(k.energy(col + s, rows - s));
        if (!(tail > rank_tol_ * original) || original == 0.0) continue;

        // v = x - alpha e1, alpha = -e^{i arg x0} ||x||, stored in place and normalized.
        const cplx x0 = col[s];
        const double ax0 = std::abs(x0);
        const cplx phase = ax0 > 0.0 ? x0 / ax0 : cplx{1.0, 0.0};
        const cplx alpha = -phase * tail;
        col[s] -= alpha;
        const double vnorm = std::sqrt(k.energy(col + s, rows - s));
        for (std::size_t i = s; i < rows; ++i) col[i] /= vnorm;

        // Apply H = I - 2 v v^H to later columns.
        for (std::size_t jj = j + 1; jj < cols; ++jj) {
            cplx* other = qr_.data() + jj * rows;
            const cplx proj = k.dot_conj(col + s, other + s, rows - s);
            k.axpy(-2.0 * proj, col + s, other + s, rows - s);
        }
        diag_[j] = alpha;
        step_[j] = s;
        ++rank_;
    }
}

void HouseholderQr::apply_reflectors(std::vector<cplx>& v) const {
    const auto& k = simd::kernels();
    for (std::size_t j = 0; j < cols_; ++j) {
        const std::size_t s = step_[j];
        if (s == npos) continue;
        const cplx* col = qr_.data() + j * rows_;
        const cplx proj = k.dot_conj(col + s, v.data() + s, rows_ - s);
        k.axpy(-2.0 * proj, col + s, v.data() + s, rows_ - s);
    }
}

double HouseholderQr::residual_norm(std::span<const cplx> y) {
    work_.assign(y.begin(), y.end());
    apply_reflectors(work_);
    return std::sqrt(simd::kernels().energy(work_.data() + rank_, rows_ - rank_));
}

std::vector<cplx> HouseholderQr::solve(std::span<const cplx> y) {
    work_.assign(y.begin(), y.end());
    apply_reflectors(work_);
    std::vector<cplx> x(cols_);
    // R is upper triangular in reflector-step coordinates; with full rank step_[j] == j.
    for (std::size_t jj = cols_; jj-- > 0;) {
        cplx acc = work_[jj];
        for (std::size_t c = jj + 1; c < cols_; ++c) acc -= qr_[c * rows_ + jj] * x[c];
        x[jj] = acc / diag_[jj];
    }
    return x;
}

} // namespace rasster::linalg
