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

#include "rasster/measurement.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "rasster/error.hpp"
#include "rasster/rng.hpp"
#include "rasster/simd/kernels.hpp"

namespace rasster {

std::vector<cplx> synthesize_echoes(std::span<const Target> targets, std::span<const double> positions,
                                    double amplitude, std::size_t P, std::size_t Q) {
    const std::size_t N = positions.size();
    std::vector<cplx> y(N);
    for (const auto& t : targets) {
        if (t.n >= P || t.m >= Q) throw InfeasibleScene("target index outside grid");
        for (std::size_t n = 0; n < N; ++n) {
            const double range = std::fmod(static_cast<double>(t.n) * positions[n], static_cast<double>(P)) /
                                 static_cast<double>(P);
            const double doppler = static_cast<double>((t.m * n) % Q) / static_cast<double>(Q);
            y[n] += amplitude * t.gamma *
                    std::polar(1.0, -2.0 * std::numbers::pi * range) *
                    std::polar(1.0, -2.0 * std::numbers::pi * doppler);
        }
    }
    return y;
}

std::vector<cplx> synthesize_echoes(std::span<const Target> targets, const FrequencyPlan& plan,
                                    const GridParams& grid) {
    const auto pos = plan.positions();
    return synthesize_echoes(targets, pos, plan.amplitude, grid.P, grid.Q);
}

MeasurementSet MeasurementSet::from_clean(std::vector<cplx> clean) {
    MeasurementSet ms;
    ms.y = clean;
    ms.y_clean = std::move(clean);
    return ms;
}

double MeasurementSet::clean_energy() const {
    return simd::kernels().energy(y_clean.data(), y_clean.size());
}

double noise_variance_for_snr(double clean_energy, std::size_t N, double snr_db) {
    return clean_energy / (static_cast<double>(N) * std::pow(10.0, snr_db / 10.0));
}

double snr_db_from_variance(double clean_energy, std::size_t N, double sigma2) {
    return 10.0 * std::log10(clean_energy / (static_cast<double>(N) * sigma2));
}

double interference_variance_for_sir(double clean_energy, std::size_t card, double sir_db) {
    return clean_energy / (static_cast<double>(card) * std::pow(10.0, sir_db / 10.0));
}

double sir_db_from_variance(double clean_energy, std::size_t card, double sigma_I2) {
    return 10.0 * std::log10(clean_energy / (static_cast<double>(card) * sigma_I2));
}

void inject_noise(MeasurementSet& ms, double snr_db, std::uint64_t seed) {
    const double energy = ms.clean_energy();
    if (!(energy > 0.0)) throw UndefinedMetric("SNR undefined for a zero clean signal");
    if (std::isinf(snr_db) && snr_db > 0) {
        ms.sigma2 = 0.0;
        ms.snr_db = snr_db;
        return;
    }
    const double sigma2 = noise_variance_for_snr(energy, ms.N(), snr_db);
    Rng rng(seed);
    for (auto& v : ms.y) v += rng.complex_normal(sigma2);
    ms.sigma2 = sigma2;
    ms.snr_db = snr_db;
}

void inject_interference(MeasurementSet& ms, const FrequencyPlan& plan, std::size_t M1,
                         std::size_t M2, double sir_db, std::uint64_t seed) {
    if (plan.N() != ms.N()) throw InvalidPlan("plan length does not match measurement length");
    ms.lambda_I = interference_pulse_set(plan, M1, M2);
    if (ms.lambda_I.empty() || (std::isinf(sir_db) && sir_db > 0)) {
        ms.sigma_I2.reset();
        ms.sir_db.reset();
        return;
    }
    const double energy = ms.clean_energy();
    if (!(energy > 0.0)) throw UndefinedMetric("SIR undefined for a zero clean signal");
    const double var = interference_variance_for_sir(energy, ms.lambda_I.size(), sir_db);
    Rng rng(seed);
    for (auto n : ms.lambda_I) ms.y[n] += rng.complex_normal(var);
    ms.sigma_I2 = var;
    ms.sir_db = sir_db;
}

void write_measurement_csv(std::ostream& os, const MeasurementSet& ms) {
    os << "n,re_y,im_y\n";
    char buf[96];
    for (std::size_t n = 0; n < ms.N(); ++n) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", n, ms.y[n].real(), ms.y[n].imag());
        os << buf;
    }
}

} // namespace rasster
