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

#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <cmath>
#include <sstream>

#include "rasster/dictionary.hpp"
#include "rasster/error.hpp"
#include "rasster/linalg.hpp"
#include "rasster/measurement.hpp"
#include "rasster/recovery.hpp"
#include "rasster/rng.hpp"
#include "rasster/scene.hpp"

using namespace rasster;

namespace {

std::vector<double> continuous_positions(Rng& rng, std::size_t N, double span = 32.0) {
    std::vector<double> d(N);
    for (auto& x : d) x = rng.uniform(0.0, span);
    return d;
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::size_t> distinct_columns(Rng& rng, std::size_t K, std::size_t cols) {
    std::vector<std::size_t> s;
    while (s.size() < K) {
        const auto u = rng.below(cols);
        if (std::find(s.begin(), s.end(), u) == s.end()) s.push_back(u);
    }
    return s;
}

} // namespace

TEST_CASE("Householder least squares agrees with Eigen") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 3 + rng.below(10);
        const std::size_t cols = 1 + rng.below(rows);
        std::vector<cplx> a(rows * cols), y(rows);
        Eigen::MatrixXcd Ae(rows, cols);
        Eigen::VectorXcd ye(rows);
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t r = 0; r < rows; ++r) Ae(r, c) = a[c * rows + r] = rng.complex_normal(1.0);
        }
        for (std::size_t r = 0; r < rows; ++r) ye(r) = y[r] = rng.complex_normal(1.0);

        linalg::HouseholderQr qr;
        qr.factor(a, rows, cols);
        REQUIRE(qr.full_rank());
        const auto x = qr.solve(y);
        const Eigen::VectorXcd xe = Ae.colPivHouseholderQr().solve(ye);
        for (std::size_t c = 0; c < cols; ++c) CHECK(std::abs(x[c] - xe(c)) < 1e-10);
        CHECK(qr.residual_norm(y) == doctest::Approx((Ae * xe - ye).norm()).epsilon(1e-10));
    }
}

TEST_CASE("Householder detects dependent columns") {
    std::vector<cplx> a{{1, 0}, {2, 0}, {0, 1}, {2, 0}, {4, 0}, {0, 2}};
    linalg::HouseholderQr qr;
    qr.factor(a, 3, 2);
    CHECK(qr.rank() == 1);
    CHECK_FALSE(qr.full_rank());
}

TEST_CASE("OMP recovers a single atom in one iteration") {
    Rng rng(4);
    const auto d = continuous_positions(rng, 10);
    const auto A = DictionaryMatrix::build(d, 6, 6);
    for (std::size_t u = 0; u < A.cols(); ++u) {
        const std::vector<std::size_t> s{u};
        const std::vector<cplx> x{{0.8, -0.3}};
        const auto y = A.apply_sparse(s, x);
        RecoveryConfig cfg;
        cfg.k_max = 3;
        const auto rep = omp_recover(A, y, cfg);
        REQUIRE(rep.support.size() == 1);
        CHECK(rep.support[0] == u);
        CHECK(rep.iterations == 1);
        CHECK(std::abs(rep.coefficients[0] - x[0]) < 1e-12);
        CHECK(rep.residual_norm < 1e-10);
    }
}

TEST_CASE("OMP pure-noise single pick is the max-correlation column") {
    Rng rng(8);
    const auto A = DictionaryMatrix::build(continuous_positions(rng, 8), 5, 5);
    for (int t = 0; t < 20; ++t) {
        std::vector<cplx> y(8);
        for (auto& v : y) v = rng.complex_normal(1.0);
        std::vector<double> corr(A.cols());
        A.correlate_abs2(y, corr);
        const auto best = static_cast<std::size_t>(std::max_element(corr.begin(), corr.end()) - corr.begin());
        RecoveryConfig cfg;
        const auto rep = omp_recover(A, y, cfg);
        CHECK(rep.support == std::vector<std::size_t>{best});
        const auto l0 = exhaustive_l0(A, y, 1, 0.0);
        CHECK(l0.support == std::vector<std::size_t>{best});
    }
}

TEST_CASE("OMP residual is non-increasing and stopping modes behave") {
    Rng rng(21);
    const auto d = continuous_positions(rng, 24);
    const auto A = DictionaryMatrix::build(d, 8, 8);
    for (int t = 0; t < 30; ++t) {
        const auto s = distinct_columns(rng, 4, A.cols());
        std::vector<cplx> x(4);
        for (auto& v : x) v = rng.complex_normal(1.0);
        auto y = A.apply_sparse(s, x);
        for (auto& v : y) v += rng.complex_normal(0.01);
        RecoveryConfig cfg;
        cfg.k_max = 8;
        const auto rep = omp_recover(A, y, cfg);
        CHECK(rep.residual_history.size() == rep.iterations + 1);
        for (std::size_t i = 1; i < rep.residual_history.size(); ++i) {
            CHECK(rep.residual_history[i] <= rep.residual_history[i - 1] * (1 + 1e-12));
        }
        CHECK(rep.support.size() == 8);

        RecoveryConfig thr;
        thr.k_max = 24;
        thr.mode = StopMode::ResidualThreshold;
        thr.residual_tol = default_residual_tol(0.1, 24);
        const auto rt = omp_recover(A, y, thr);
        CHECK(rt.residual_norm <= thr.residual_tol);
        CHECK(rt.support.size() >= 1);
    }
}

TEST_CASE("OMP input validation") {
    Rng rng(2);
    const auto A = DictionaryMatrix::build(continuous_positions(rng, 6), 3, 3);
    std::vector<cplx> y(6, cplx(1, 0));
    RecoveryConfig cfg;
    cfg.k_max = 7;
    CHECK_THROWS_AS(omp_recover(A, y, cfg), DomainError);
    cfg.k_max = 2;
    std::vector<cplx> short_y(5);
    CHECK_THROWS_AS(omp_recover(A, short_y, cfg), DomainError);
    cfg.residual_tol = -1.0;
    CHECK_THROWS_AS(omp_recover(A, y, cfg), DomainError);
}

TEST_CASE("OMP reports degeneracy with the partial support") {
    // Integer positions with P = 2 and every d even make range columns p=0 and p=1 identical.
    const std::vector<double> d{0, 2, 4, 6};
    const auto A = DictionaryMatrix::build(d, 2, 1);
    std::vector<cplx> y{{1, 0}, {1, 0}, {1, 0}, {1, 0}};
    y[2] += cplx(0.1, 0);
    RecoveryConfig cfg;
    cfg.k_max = 2;
    try {
        (void)omp_recover(A, y, cfg);
        FAIL("expected NumericalDegeneracy");
    } catch (const NumericalDegeneracy& e) {
        CHECK(e.partial_support() == std::vector<std::size_t>{0});
    }
}

TEST_CASE("exhaustive oracle") {
    Rng rng(33);
    const auto A = DictionaryMatrix::build(continuous_positions(rng, 8), 6, 6);
    std::vector<cplx> y(8);
    for (auto& v : y) v = rng.complex_normal(1.0);
    const auto k0 = exhaustive_l0(A, y, 0, 1e-9);
    CHECK(k0.support.empty());
    CHECK(k0.residual_norm == doctest::Approx(std::sqrt(std::accumulate(
                                  y.begin(), y.end(), 0.0, [](double a, cplx b) { return a + std::norm(b); }))));

    CHECK_THROWS_AS(exhaustive_l0(A, y, 3, 1e-9, 100), OracleInfeasible);

    // 2-sparse truth, N = 5 continuous positions.
    for (int t = 0; t < 20; ++t) {
        const auto A5 = DictionaryMatrix::build(continuous_positions(rng, 5), 6, 6);
        const auto s = distinct_columns(rng, 2, 36);
        std::vector<cplx> x{rng.complex_normal(1.0), rng.complex_normal(1.0)};
        const auto y5 = A5.apply_sparse(s, x);
        const auto res = exhaustive_l0(A5, y5, 2, 1e-9);
        CHECK(res.support == sorted(s));
        CHECK(res.unique);
        CHECK(res.subsets_examined == 630);
    }
}

TEST_CASE("OMP matches the oracle on easy noiseless K=2 problems") {
    Rng rng(55);
    int agree = 0, total = 0;
    for (int t = 0; t < 50; ++t) {
        const auto A = DictionaryMatrix::build(continuous_positions(rng, 8), 6, 6);
        const auto s = distinct_columns(rng, 2, 36);
        std::vector<cplx> x{rng.complex_normal(1.0), rng.complex_normal(1.0)};
        const auto y = A.apply_sparse(s, x);
        RecoveryConfig cfg;
        cfg.k_max = 2;
        const auto rep = omp_recover(A, y, cfg);
        const auto l0 = exhaustive_l0(A, y, 2, 1e-9);
        CHECK(l0.support == sorted(s));
        ++total;
        agree += sorted(rep.support) == l0.support;
    }
    // Greedy selection is not guaranteed to find the optimum; it usually does.
    CHECK(agree >= total / 2);
}

TEST_CASE("decoding") {
    const auto grid = derive_grid(CarrierGrid{}, 25, 25);
    const std::vector<std::size_t> s{0, 25, 26};
    const std::vector<cplx> c{{1, 0}, {2, 0}, {0, 1}};
    const auto dec = decode_support(s, c, grid, 0.5);
    CHECK(dec[0].p == 0);
    CHECK(dec[0].q == 0);
    CHECK(std::abs(dec[0].beta - cplx(2, 0)) < 1e-12);
    CHECK(dec[1].p == 1);
    CHECK(dec[1].q == 0);
    CHECK(dec[1].range_m == doctest::Approx(2.4));
    CHECK(dec[2].velocity_mps == doctest::Approx(grid.delta_nu));
    CHECK(std::abs(std::abs(dec[2].beta) - 2.0) < 1e-12);
    const std::vector<std::size_t> bad{625};
    const std::vector<cplx> one{{1, 0}};
    CHECK_THROWS_AS(decode_support(bad, one, grid), DomainError);
}

TEST_CASE("recovery CSV") {
    const auto grid = derive_grid(CarrierGrid{}, 4, 4);
    const std::vector<double> d{0, 1, 2, 3, 5};
    const auto A = DictionaryMatrix::build(d, 4, 4);
    const std::vector<std::size_t> s{5};
    const std::vector<cplx> x{{1, 0}};
    RecoveryConfig cfg;
    const auto rep = omp_recover(A, A.apply_sparse(s, x), cfg, grid);
    std::ostringstream os;
    write_recovery_csv(os, rep);
    std::istringstream is(os.str());
    std::string header, row;
    std::getline(is, header);
    CHECK(header == "u,p,q,range_m,velocity_mps,re_beta,im_beta");
    std::getline(is, row);
    CHECK(row.rfind("5,1,1,", 0) == 0);
}
