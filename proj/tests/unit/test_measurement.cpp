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

#include <cmath>
#include <numbers>
#include <sstream>

#include "rasster/dictionary.hpp"
#include "rasster/error.hpp"
#include "rasster/measurement.hpp"
#include "rasster/rng.hpp"

using namespace rasster;

namespace {

double energy(const std::vector<cplx>& v) {
    double e = 0;
    for (auto x : v) e += std::norm(x);
    return e;
}

CarrierGrid grid32() {
    CarrierGrid g;
    g.M = 32;
    return g;
}

} // namespace

TEST_CASE("echo synthesis special cases") {
    const std::vector<double> d{0, 3, 1, 2, 5, 4};
    std::vector<Target> one{Target{0, 0}};
    auto y = synthesize_echoes(one, d, 1.0, 5, 4);
    for (auto v : y) CHECK(std::abs(v - cplx(1, 0)) < 1e-15);

    one[0].m = 2;  // Q/2
    y = synthesize_echoes(one, d, 1.0, 5, 4);
    for (std::size_t n = 0; n < d.size(); ++n) CHECK(std::abs(y[n] - cplx(n % 2 ? -1.0 : 1.0, 0)) < 1e-14);

    y = synthesize_echoes(std::vector<Target>{}, d, 1.0, 5, 4);
    CHECK(y.size() == d.size());
    CHECK(energy(y) == 0.0);

    std::vector<Target> outside{Target{5, 0}};
    CHECK_THROWS_AS(synthesize_echoes(outside, d, 1.0, 5, 4), InfeasibleScene);
}

TEST_CASE("echo synthesis matches a direct double loop and A x") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t N = 4, P = 5, Q = 6;
        std::vector<double> d(N);
        for (auto& x : d) x = static_cast<double>(rng.below(32));
        std::vector<Target> ts{Target{rng.below(P), rng.below(Q), rng.complex_normal(1.0)},
                               Target{rng.below(P), rng.below(Q), rng.complex_normal(1.0)}};
        if (ts[0].n == ts[1].n && ts[0].m == ts[1].m) continue;
        const double amp = 0.7;
        const auto y = synthesize_echoes(ts, d, amp, P, Q);
        for (std::size_t n = 0; n < N; ++n) {
            cplx ref = 0;
            for (const auto& t : ts) {
                const double ph = -2 * std::numbers::pi *
                                  (double(t.n) * d[n] / double(P) + double(t.m) * double(n) / double(Q));
                ref += amp * t.gamma * std::polar(1.0, ph);
            }
            CHECK(std::abs(y[n] - ref) < 1e-12);
        }
        const auto A = DictionaryMatrix::build(d, P, Q);
        const std::vector<std::size_t> sup{encode_cell(ts[0].n, ts[0].m, Q), encode_cell(ts[1].n, ts[1].m, Q)};
        const std::vector<cplx> x{amp * ts[0].gamma, amp * ts[1].gamma};
        const auto Ax = A.apply_sparse(sup, x);
        for (std::size_t n = 0; n < N; ++n) CHECK(std::abs(Ax[n] - y[n]) < 1e-12);
    }
}

TEST_CASE("SNR calibration") {
    CHECK(noise_variance_for_snr(32.0, 32, 0.0) == doctest::Approx(1.0));
    CHECK(noise_variance_for_snr(60.0, 60, -30.0) == doctest::Approx(1000.0).epsilon(1e-13));
    for (double snr : {-40.0, -12.5, 0.0, 3.3, 25.0}) {
        const double s2 = noise_variance_for_snr(17.3, 24, snr);
        CHECK(std::abs(snr_db_from_variance(17.3, 24, s2) - snr) < 1e-12);
    }

    auto ms = MeasurementSet::from_clean(std::vector<cplx>(8, cplx(1, 0)));
    inject_noise(ms, std::numeric_limits<double>::infinity(), 1);
    CHECK(ms.y == ms.y_clean);

    auto zero = MeasurementSet::from_clean(std::vector<cplx>(8));
    CHECK_THROWS_AS(inject_noise(zero, 0.0, 1), UndefinedMetric);
}

TEST_CASE("injected noise has the calibrated variance") {
    const std::size_t N = 4096;
    auto ms = MeasurementSet::from_clean(std::vector<cplx>(N, cplx(1, 0)));
    inject_noise(ms, -10.0, 77);
    REQUIRE(ms.sigma2);
    CHECK(*ms.sigma2 == doctest::Approx(10.0));
    double e = 0, re = 0, im = 0;
    for (std::size_t n = 0; n < N; ++n) {
        const auto z = ms.y[n] - ms.y_clean[n];
        e += std::norm(z);
        re += z.real() * z.real();
        im += z.imag() * z.imag();
    }
    CHECK(e / N == doctest::Approx(10.0).epsilon(0.06));
    CHECK(re / im == doctest::Approx(1.0).epsilon(0.1));

    auto again = MeasurementSet::from_clean(std::vector<cplx>(N, cplx(1, 0)));
    inject_noise(again, -10.0, 77);
    CHECK(again.y == ms.y);
}

TEST_CASE("SIR calibration and interference") {
    CHECK(interference_variance_for_sir(32.0, 11, 10.0) == doctest::Approx(32.0 / 110.0).epsilon(1e-14));
    for (double sir : {100.0, 10.0, -5.0}) {
        const double v = interference_variance_for_sir(9.0, 7, sir);
        CHECK(std::abs(sir_db_from_variance(9.0, 7, v) - sir) < 1e-12);
    }
    CHECK(interference_variance_for_sir(32.0, 11, 100.0) * 11 / 32.0 == doctest::Approx(1e-10));

    const auto rsf = make_random_full_plan(grid32(), 32, 1.0, 3);
    auto ms = MeasurementSet::from_clean(std::vector<cplx>(32, cplx(1, 0)));
    inject_interference(ms, rsf, 14, 24, 10.0, 5);
    CHECK(ms.lambda_I.size() == 11);
    REQUIRE(ms.sigma_I2);
    CHECK(*ms.sigma_I2 == doctest::Approx(32.0 / 110.0));
    for (std::size_t n = 0; n < 32; ++n) {
        const bool hit = rsf.d[n] >= 14 && rsf.d[n] <= 24;
        CHECK((ms.y[n] != ms.y_clean[n]) == hit);
    }

    const auto avoid = make_sparse_random_plan(grid32(), SubbandSet::excluding(32, 14, 24), 20, 1.0, false, 2);
    auto clean = MeasurementSet::from_clean(std::vector<cplx>(20, cplx(0.5, 0.5)));
    inject_interference(clean, avoid, 14, 24, 10.0, 5);
    CHECK(clean.y == clean.y_clean);
    CHECK_FALSE(clean.sigma_I2);
    CHECK(clean.lambda_I.empty());
}

TEST_CASE("measurement CSV schema") {
    auto ms = MeasurementSet::from_clean({cplx(1, 2), cplx(3, -4)});
    std::ostringstream os;
    write_measurement_csv(os, ms);
    CHECK(os.str().rfind("n,re_y,im_y\n", 0) == 0);
    CHECK(os.str().find("1,3,-4") != std::string::npos);
}
