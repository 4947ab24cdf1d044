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

#include "rasster/glrt.hpp"

#include <algorithm>
#include <cmath>

#include "rasster/error.hpp"

namespace rasster {

double noncentral_chi2_2_tail(double x, double rho) {
    if (x <= 0.0) return 1.0;
    const double half_x = x / 2.0;
    const double log_half_x = std::log(half_x);
    if (rho == 0.0) return std::exp(-half_x);

    const double half_rho = rho / 2.0;
    const double log_half_rho = std::log(half_rho);
    // central tail with 2+2j dof: e^{-x/2} sum_{i<=j} (x/2)^i / i!
    double central = 0.0;
    double total = 0.0;
    double weight_sum = 0.0;
    for (std::size_t j = 0;; ++j) {
        const double dj = static_cast<double>(j);
        const double lg = std::lgamma(dj + 1.0);
        central = std::min(central + std::exp(-half_x + dj * log_half_x - lg), 1.0);
        const double weight = std::exp(-half_rho + dj * log_half_rho - lg);
        total += weight * central;
        weight_sum += weight;
        if (dj <= half_rho) continue;
        if (central >= 1.0 - 1e-16) {
            // Remaining central tails are 1; add the leftover Poisson mass.
            total += std::max(0.0, 1.0 - weight_sum);
            break;
        }
        if (weight * central < 1e-17 * total) break;
    }
    return std::clamp(total, 0.0, 1.0);
}

double glrt_threshold(double P_fa, double rho, std::size_t card_I) {
    if (!(P_fa > 0.0 && P_fa < 1.0)) throw DomainError("GLRT: P_fa must lie in (0, 1)");
    if (card_I < 1) throw DomainError("GLRT: |I| must be >= 1");
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("GLRT: rho must be finite and >= 0");

    const double target = -std::expm1(static_cast<double>(card_I) * std::log1p(-P_fa));
    if (target >= 1.0) return 0.0;

    double lo = 0.0;
    double hi = std::max(2.0, 2.0 * rho + 2.0);
    while (noncentral_chi2_2_tail(hi, rho) > target) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double q = noncentral_chi2_2_tail(mid, rho);
        if (q > target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (std::abs(q - target) <= 1e-10 * target && hi - lo <= 1e-13 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double matched_filter_statistic(const DictionaryMatrix& A, std::span<const cplx> y, double sigma2) {
    if (!(sigma2 > 0.0)) throw DomainError("GLRT: noise variance must be positive");
    std::vector<double> corr(A.cols());
    A.correlate_abs2(y, corr);
    const double peak = corr.empty() ? 0.0 : *std::max_element(corr.begin(), corr.end());
    // Every column has squared norm N.
    return 2.0 * peak / (static_cast<double>(A.rows()) * sigma2);
}

std::vector<std::size_t> screen_bins(std::span<const double> statistics, double gamma) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < statistics.size(); ++i) {
        if (statistics[i] < 0.0) throw DomainError("GLRT: statistics must be nonnegative");
        if (statistics[i] > gamma) out.push_back(i);
    }
    return out;
}

} // namespace rasster
