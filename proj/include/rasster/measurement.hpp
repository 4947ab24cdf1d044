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

// Clean echo synthesis for one coarse bin and calibrated noise /
// interference injection.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rasster/scene.hpp"
#include "rasster/waveform.hpp"

namespace rasster {

using cplx = std::complex<double>;

// y~[n] = amplitude * sum_k gamma_k exp(-j 2 pi n_k d_n / P) exp(-j 2 pi m_k n / Q)
std::vector<cplx> synthesize_echoes(std::span<const Target> targets, std::span<const double> positions,
                                    double amplitude, std::size_t P, std::size_t Q);

std::vector<cplx> synthesize_echoes(std::span<const Target> targets, const FrequencyPlan& plan,
                                    const GridParams& grid);

struct MeasurementSet {
    std::vector<cplx> y_clean;
    std::vector<cplx> y;
    std::optional<double> sigma2;    // unset: no noise injected
    std::optional<double> sigma_I2;  // unset: no interference / empty pulse set
    std::vector<std::size_t> lambda_I;
    std::optional<double> snr_db;
    std::optional<double> sir_db;

    static MeasurementSet from_clean(std::vector<cplx> clean);

    std::size_t N() const noexcept { return y_clean.size(); }
    double clean_energy() const;
};

// sigma^2 = E / (N 10^(snr/10))
double noise_variance_for_snr(double clean_energy, std::size_t N, double snr_db);
double snr_db_from_variance(double clean_energy, std::size_t N, double sigma2);

// sigma_I^2 = E / (|Lambda_I| 10^(sir/10))
double interference_variance_for_sir(double clean_energy, std::size_t card, double sir_db);
double sir_db_from_variance(double clean_energy, std::size_t card, double sigma_I2);

// Adds i.i.d. circular Gaussian noise calibrated to `snr_db` against the
// clean energy. +inf leaves y untouched. UndefinedMetric if the clean
// signal is zero.
void inject_noise(MeasurementSet& ms, double snr_db, std::uint64_t seed);

// Adds circular Gaussian interference on pulses with d_n in [M1, M2].
// An empty pulse set leaves y untouched and sigma_I2 unset.
void inject_interference(MeasurementSet& ms, const FrequencyPlan& plan, std::size_t M1,
                         std::size_t M2, double sir_db, std::uint64_t seed);

// n,re_y,im_y
void write_measurement_csv(std::ostream& os, const MeasurementSet& ms);

} // namespace rasster
