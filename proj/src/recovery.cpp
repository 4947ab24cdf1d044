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

#include "rasster/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "rasster/error.hpp"
#include "rasster/linalg.hpp"
#include "rasster/simd/kernels.hpp"

namespace rasster {

void RecoveryConfig::validate(std::size_t N) const {
    if (k_max > N) throw DomainError("recovery: k_max exceeds the number of measurements");
    if (!(residual_tol >= 0.0)) throw DomainError("recovery: residual_tol must be >= 0");
}

double default_residual_tol(double sigma, std::size_t N) {
    const double n = static_cast<double>(N);
    return sigma * std::sqrt(n + 2.0 * std::sqrt(n * std::log(n)));
}

namespace {

void gather_columns(const DictionaryMatrix& A, std::span<const std::size_t> support,
                    std::vector<cplx>& out) {
    const std::size_t N = A.rows();
    out.resize(N * support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        A.column(support[i], std::span<cplx>(out.data() + i * N, N));
    }
}

} // namespace

RecoveryReport omp_recover(const DictionaryMatrix& A, std::span<const cplx> y,
                           const RecoveryConfig& config) {
    const std::size_t N = A.rows();
    if (y.size() != N) throw DomainError("recovery: measurement length does not match dictionary");
    config.validate(N);
    const auto& k = simd::kernels();

    RecoveryReport rep;
    std::vector<cplx> r(y.begin(), y.end());
    const double y_norm = std::sqrt(k.energy(y.data(), N));
    rep.residual_norm = y_norm;
    rep.residual_history.push_back(y_norm);

    std::vector<double> corr(A.cols());
    std::vector<char> selected(A.cols(), 0);
    std::vector<cplx> cols;
    linalg::HouseholderQr qr;

    const std::size_t k_limit = std::min(config.k_max, A.cols());
    while (rep.support.size() < k_limit) {
        if (config.mode == StopMode::ResidualThreshold && rep.residual_norm <= config.residual_tol) break;
        // Exact fit reached; further atoms would only be fitted to rounding noise.
        if (rep.residual_norm <= 1e-12 * y_norm) break;

        // Columns share the norm sqrt(N), so |a_u^H r| ranks like the normalized score.
        A.correlate_abs2(r, corr);
        std::size_t best = A.cols();
        double best_val = -1.0;
        for (std::size_t u = 0; u < A.cols(); ++u) {
            if (!selected[u] && corr[u] > best_val) {
                best_val = corr[u];
                best = u;
            }
        }
        rep.support.push_back(best);
        selected[best] = 1;

        gather_columns(A, rep.support, cols);
        qr.factor(cols, N, rep.support.size());
        if (!qr.full_rank()) {
            rep.support.pop_back();
            throw NumericalDegeneracy("recovery: selected columns are linearly dependent", rep.support);
        }
        rep.coefficients = qr.solve(y);

        r.assign(y.begin(), y.end());
        for (std::size_t i = 0; i < rep.support.size(); ++i) {
            k.axpy(-rep.coefficients[i], cols.data() + i * N, r.data(), N);
        }
        rep.residual_norm = std::sqrt(k.energy(r.data(), N));
        rep.residual_history.push_back(rep.residual_norm);
        ++rep.iterations;
    }
    return rep;
}

RecoveryReport omp_recover(const DictionaryMatrix& A, std::span<const cplx> y,
                           const RecoveryConfig& config, const GridParams& grid, double amplitude) {
    auto rep = omp_recover(A, y, config);
    rep.decoded = decode_support(rep.support, rep.coefficients, grid, amplitude);
    return rep;
}

namespace {

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    long double acc = 1.0L;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (acc > static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return static_cast<std::uint64_t>(std::llround(acc));
}

} // namespace

L0Result exhaustive_l0(const DictionaryMatrix& A, std::span<const cplx> y, std::size_t K, double tol,
                       std::uint64_t cap) {
    const std::size_t N = A.rows();
    const std::size_t cols = A.cols();
    if (y.size() != N) throw DomainError("oracle: measurement length does not match dictionary");
    L0Result res;
    if (K == 0) {
        res.residual_norm = std::sqrt(simd::kernels().energy(y.data(), N));
        res.attaining = res.residual_norm <= tol ? 1 : 0;
        res.unique = res.attaining == 1;
        res.subsets_examined = 1;
        return res;
    }
    if (K > cols) throw DomainError("oracle: K exceeds the number of columns");
    if (binomial(cols, K) > cap) throw OracleInfeasible("oracle: C(PQ, K) exceeds the enumeration cap");

    std::vector<std::size_t> idx(K);
    for (std::size_t i = 0; i < K; ++i) idx[i] = i;
    std::vector<cplx> buf;
    linalg::HouseholderQr qr;
    res.residual_norm = std::numeric_limits<double>::infinity();

    while (true) {
        gather_columns(A, idx, buf);
        qr.factor(buf, N, K);
        const double rn = qr.residual_norm(y);
        ++res.subsets_examined;
        if (rn <= tol) ++res.attaining;
        if (rn < res.residual_norm) {
            res.residual_norm = rn;
            res.support = idx;
        }
        // Next combination in lexicographic order.
        std::size_t i = K;
        while (i > 0 && idx[i - 1] == cols - K + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < K; ++j) idx[j] = idx[j - 1] + 1;
    }
    res.unique = res.attaining == 1;
    return res;
}

std::vector<DecodedTarget> decode_support(std::span<const std::size_t> support,
                                          std::span<const std::complex<double>> coefficients,
                                          const GridParams& grid, double amplitude) {
    std::vector<DecodedTarget> out;
    out.reserve(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        const std::size_t u = support[i];
        if (u >= grid.columns()) throw DomainError("decode: support index outside the grid");
        DecodedTarget t;
        t.u = u;
        t.p = u / grid.Q;
        t.q = u % grid.Q;
        Target cell;
        cell.n = t.p;
        cell.m = t.q;
        const auto phys = decode_physical(cell, grid);
        t.range_m = phys.range_m;
        t.velocity_mps = phys.velocity_mps;
        const std::complex<double> gamma =
            i < coefficients.size() ? coefficients[i] / amplitude : std::complex<double>{};
        t.beta = reflectivity_from_gamma(gamma, t.range_m, grid.f_c);
        out.push_back(t);
    }
    return out;
}

void write_recovery_csv(std::ostream& os, const RecoveryReport& report) {
    os << "u,p,q,range_m,velocity_mps,re_beta,im_beta\n";
    char buf[192];
    for (const auto& t : report.decoded) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", t.u, t.p, t.q, t.range_m,
                      t.velocity_mps, t.beta.real(), t.beta.imag());
        os << buf;
    }
}

} // namespace rasster
