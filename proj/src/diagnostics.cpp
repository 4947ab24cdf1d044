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

#include "rasster/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <Eigen/SVD>

#include "rasster/error.hpp"
#include "rasster/rng.hpp"
#include "rasster/simd/kernels.hpp"

namespace rasster {

CoherenceReport mutual_coherence(const DictionaryMatrix& A) {
    if (A.cols() < 2) throw UndefinedMetric("coherence needs at least two columns");
    const std::size_t N = A.rows();
    if (N == 0) throw UndefinedMetric("coherence of an empty dictionary");
    // Column 0 is all ones, so a_u^H a_0 = sum_n conj(a_u[n]).
    const std::vector<cplx> ones(N, cplx{1.0, 0.0});
    std::vector<double> corr(A.cols());
    A.correlate_abs2(ones, corr);
    CoherenceReport rep;
    double best = -1.0;
    for (std::size_t u = 1; u < A.cols(); ++u) {
        if (corr[u] > best) {
            best = corr[u];
            rep.u = u;
        }
    }
    rep.v = 0;
    rep.mu = std::min(1.0, std::sqrt(best) / static_cast<double>(N));
    return rep;
}

CoherenceReport mutual_coherence_pairwise(const DictionaryMatrix& A) {
    if (A.cols() < 2) throw UndefinedMetric("coherence needs at least two columns");
    const std::size_t N = A.rows();
    const auto& k = simd::kernels();
    std::vector<std::vector<cplx>> cols(A.cols());
    std::vector<double> norms(A.cols());
    for (std::size_t u = 0; u < A.cols(); ++u) {
        cols[u] = A.column(u);
        norms[u] = std::sqrt(k.energy(cols[u].data(), N));
    }
    CoherenceReport rep;
    double best = -1.0;
    for (std::size_t u = 0; u < A.cols(); ++u) {
        for (std::size_t v = u + 1; v < A.cols(); ++v) {
            const double g = std::abs(k.dot_conj(cols[u].data(), cols[v].data(), N)) / (norms[u] * norms[v]);
            if (g > best) {
                best = g;
                rep.u = u;
                rep.v = v;
            }
        }
    }
    rep.mu = std::min(1.0, best);
    return rep;
}

CoherenceBounds coherence_bounds(std::size_t N, std::size_t P, std::size_t Q, double delta,
                                 std::size_t card_I) {
    if (N < 1 || P < 2 || Q < 2) throw DomainError("bounds need N >= 1 and P, Q >= 2");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("bounds need 0 < delta < 1");
    if (card_I < 1) throw DomainError("bounds need |I| >= 1");
    CoherenceBounds b;
    const double pairs = 2.0 * static_cast<double>(P - 1) * static_cast<double>(Q - 1);
    b.K1_real = 0.5 * std::sqrt(static_cast<double>(N) / (2.0 * (std::log(pairs) - std::log(delta)))) + 0.5;
    b.K2_real = std::numbers::pi * static_cast<double>(card_I) / 2.0 + 0.5;
    b.K1 = static_cast<std::size_t>(std::floor(b.K1_real));
    b.K2 = static_cast<std::size_t>(std::floor(b.K2_real));
    return b;
}

CoherenceReport coherence_report(const DictionaryMatrix& A, double delta, std::size_t card_I) {
    auto rep = mutual_coherence(A);
    const auto b = coherence_bounds(A.rows(), A.P(), A.Q(), delta, card_I);
    rep.bound_K_coherence = b.K1;
    rep.bound_K_density = b.K2;
    rep.delta = delta;
    return rep;
}

namespace {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    long double acc = 1.0L;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (acc > static_cast<long double>(cap)) return cap + 1;
    }
    return static_cast<std::uint64_t>(std::llround(acc));
}

using SquareSvd = Eigen::JacobiSVD<Eigen::MatrixXcd, Eigen::NoQRPreconditioner>;

// Reusable buffers for the smallest-singular-value routine.
struct SvdWork {
    explicit SvdWork(Eigen::Index n) : a(n, n), qr(n, n), svd(n, n), x(n), z(n) {}
    Eigen::MatrixXcd a;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr;
    SquareSvd svd;
    Eigen::VectorXcd x, z;
};

// sigma_min of the square submatrix via QR and inverse iteration on R.
// QR is backward stable, so a converged estimate is as accurate as a full
// SVD; the SVD is only a fallback when the iteration stalls. Since
// sigma_min <= min |r_ii|, a diagonal at or below `certain_below` already
// settles the check and is returned as is.
double smallest_singular_value(const DictionaryMatrix& A, std::span<const std::size_t> subset, SvdWork& w,
                               double certain_below) {
    const auto N = static_cast<Eigen::Index>(A.rows());
    for (std::size_t c = 0; c < subset.size(); ++c) {
        A.column(subset[c], std::span<cplx>(w.a.col(static_cast<Eigen::Index>(c)).data(), A.rows()));
    }
    w.qr.compute(w.a);
    const auto& qr = w.qr.matrixQR();
    double min_diag = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < N; ++i) min_diag = std::min(min_diag, std::abs(qr(i, i)));
    if (min_diag <= certain_below) return min_diag;

    const auto R = qr.topLeftCorner(N, N).triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < N; ++i) w.x(i) = cplx(1.0, 0.5 * static_cast<double>(i % 3));
    w.x.normalize();
    double est = min_diag;
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 500; ++it) {
        w.z = R.adjoint().solve(w.x);
        w.x = R.solve(w.z);
        w.x.normalize();
        est = (R * w.x).norm();
        if (std::abs(prev - est) <= 1e-14 * est) return est;
        prev = est;
    }
    w.svd.compute(w.a);
    const auto& s = w.svd.singularValues();
    return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

} // namespace

SparkReport spark_check_positions(std::span<const double> positions, std::size_t P, std::size_t Q,
                                  std::uint64_t seed, const SparkOptions& options) {
    const std::size_t N = positions.size();
    const auto A = DictionaryMatrix::build(positions, P, Q);
    const std::size_t cols = A.cols();
    if (N == 0 || N > cols) throw DomainError("spark check needs 1 <= N <= PQ");

    SparkReport rep;
    rep.trials = 1;
    rep.tolerance = 1e-8 * std::sqrt(static_cast<double>(N));
    rep.min_singular_value = std::numeric_limits<double>::infinity();
    const auto total = binomial_capped(cols, N, options.exhaustive_cap);
    rep.exhaustive = total <= options.exhaustive_cap;
    SvdWork work(static_cast<Eigen::Index>(N));

    auto check = [&](std::span<const std::size_t> subset) {
        const double s = smallest_singular_value(A, subset, work, rep.tolerance);
        rep.min_singular_value = std::min(rep.min_singular_value, s);
        if (s <= rep.tolerance) ++rep.failures;
    };

    std::vector<std::size_t> idx(N);
    if (rep.exhaustive) {
        rep.submatrices_per_trial = total;
        for (std::size_t i = 0; i < N; ++i) idx[i] = i;
        while (true) {
            check(idx);
            std::size_t i = N;
            while (i > 0 && idx[i - 1] == cols - N + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < N; ++j) idx[j] = idx[j - 1] + 1;
        }
    } else {
        rep.submatrices_per_trial = options.samples;
        Rng rng(seed);
        std::vector<std::size_t> pool(cols);
        for (std::uint64_t s = 0; s < options.samples; ++s) {
            for (std::size_t i = 0; i < cols; ++i) pool[i] = i;
            for (std::size_t i = 0; i < N; ++i) {
                const auto j = i + rng.below(cols - i);
                std::swap(pool[i], pool[j]);
                idx[i] = pool[i];
            }
            check(idx);
        }
    }
    rep.failed_trials = rep.failures > 0 ? 1 : 0;
    return rep;
}

SparkReport spark_certify(std::size_t N, std::size_t P, std::size_t Q, std::size_t trials,
                          std::uint64_t seed, const SparkOptions& options) {
    SparkReport total;
    total.tolerance = 1e-8 * std::sqrt(static_cast<double>(N));
    total.min_singular_value = std::numeric_limits<double>::infinity();
    std::vector<double> d(N);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, {0x5ba4c, t}));
        for (auto& x : d) x = rng.uniform(0.0, options.position_span);
        const auto r = spark_check_positions(d, P, Q, derive_seed(seed, {0x5ba4d, t}), options);
        total.trials += 1;
        total.submatrices_per_trial = r.submatrices_per_trial;
        total.exhaustive = r.exhaustive;
        total.failures += r.failures;
        total.failed_trials += r.failed_trials;
        total.min_singular_value = std::min(total.min_singular_value, r.min_singular_value);
    }
    return total;
}

double coherence_tail_bound(std::size_t N, std::size_t P, std::size_t Q, double epsilon) {
    return 2.0 * static_cast<double>(P - 1) * static_cast<double>(Q - 1) *
           std::exp(-static_cast<double>(N) * epsilon * epsilon / 2.0);
}

TailCheck coherence_tail_check(const CarrierGrid& grid, const SubbandSet& subbands, std::size_t N,
                               std::size_t P, std::size_t Q, std::size_t trials, double epsilon,
                               std::uint64_t seed) {
    if (trials < 1) throw DomainError("tail check needs at least one trial");
    TailCheck tc;
    tc.trials = trials;
    tc.epsilon = epsilon;
    tc.bound = coherence_tail_bound(N, P, Q, epsilon);
    const bool reuse = N > subbands.cardinality();
    for (std::size_t t = 0; t < trials; ++t) {
        const auto plan = make_sparse_random_plan(grid, subbands, N, 1.0, reuse, derive_seed(seed, {0x7a11, t}));
        const auto A = DictionaryMatrix::build(plan, P, Q);
        const double mu = mutual_coherence(A).mu;
        tc.max_mu = std::max(tc.max_mu, mu);
        if (mu >= epsilon) ++tc.exceedances;
    }
    tc.frequency = static_cast<double>(tc.exceedances) / static_cast<double>(trials);
    tc.pass = tc.frequency <= tc.bound;
    return tc;
}

double hit_rate(std::span<const Cell> truth, std::span<const Cell> estimates, std::size_t T_r,
                std::size_t T_d) {
    if (truth.empty()) throw UndefinedMetric("hit rate needs at least one truth target");
    auto near = [](std::size_t a, std::size_t b, std::size_t tol) { return (a > b ? a - b : b - a) <= tol; };
    std::size_t hits = 0;
    for (const auto& e : estimates) {
        const bool hit = std::any_of(truth.begin(), truth.end(), [&](const Cell& t) {
            return near(t.p, e.p, T_r) && near(t.q, e.q, T_d);
        });
        if (hit) ++hits;
    }
    return std::min(1.0, static_cast<double>(hits) / static_cast<double>(truth.size()));
}

void write_coherence_csv(std::ostream& os, std::span<const CoherenceCsvRow> rows) {
    os << "seed,N,P,Q,mu,K1,K2,failures\n";
    char buf[192];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%llu,%zu,%zu,%zu,%.17g,%zu,%zu,%llu\n",
                      static_cast<unsigned long long>(r.seed), r.N, r.P, r.Q, r.mu, r.K1, r.K2,
                      static_cast<unsigned long long>(r.failures));
        os << buf;
    }
}

} // namespace rasster
