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

// Physical delay-Doppler grid and on-grid target scenes.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rasster/waveform.hpp"

namespace rasster {

struct GridParams {
    std::size_t P = 1;      // high-resolution range cells per coarse bin
    std::size_t Q = 1;      // Doppler cells
    double R_u = 0.0;       // unambiguous high-resolution range span (m)
    double nu_u = 0.0;      // unambiguous velocity (m/s)
    double delta_R = 0.0;   // m
    double delta_nu = 0.0;  // m/s
    std::size_t L_r = 0;    // coarse bins per PRI
    double f_c = 0.0;       // carried for reflectivity decoding
    // Reporting only. A configured CPI need not equal N*T, so nothing reads it.
    std::optional<double> cpi_s;

    std::size_t columns() const noexcept { return P * Q; }
};

// R_u = c/(2 delta_f), nu_u = c/(2 f_c T), L_r = floor(T/T_p).
GridParams derive_grid(const CarrierGrid& grid, std::size_t P, std::size_t Q);

struct Target {
    std::size_t n = 0;              // range index in [0, P)
    std::size_t m = 0;              // Doppler index in [0, Q)
    std::complex<double> gamma{1.0, 0.0};
    std::size_t coarse_bin = 1;     // l_r in [1, L_r]

    friend bool operator==(const Target&, const Target&) = default;
};

struct TargetScene {
    std::vector<Target> targets;
    GridParams grid;

    // Throws InfeasibleScene on out-of-range indices, zero/non-finite
    // gamma or two targets sharing a cell within one coarse bin.
    void validate() const;

    // Occupied coarse bins, ascending.
    std::vector<std::size_t> bins() const;

    std::vector<Target> in_bin(std::size_t coarse_bin) const;
};

struct PhysicalTarget {
    double range_m = 0.0;
    double velocity_mps = 0.0;
};

PhysicalTarget decode_physical(const Target& target, const GridParams& grid);

// beta = gamma * exp(+j 4 pi f_c R / c)
std::complex<double> reflectivity_from_gamma(std::complex<double> gamma, double range_m, double f_c);

// Inverse of the above: gamma = beta * exp(-j 4 pi f_c R / c)
std::complex<double> gamma_from_reflectivity(std::complex<double> beta, double range_m, double f_c);

enum class LayoutKind { Widely, Clustered, SingleBin };

struct SceneLayout {
    LayoutKind kind = LayoutKind::SingleBin;
    std::size_t per_bin = 1;  // Clustered only
    bool moving = true;       // false pins every Doppler index to 0

    static SceneLayout widely(bool moving = true) { return {LayoutKind::Widely, 1, moving}; }
    static SceneLayout clustered(std::size_t per_bin, bool moving = true) {
        return {LayoutKind::Clustered, per_bin, moving};
    }
    static SceneLayout single_bin(bool moving = true) { return {LayoutKind::SingleBin, 1, moving}; }
};

// K targets with unit-modulus, uniform-phase gamma; cells are distinct
// within each coarse bin. Deterministic in `seed`.
TargetScene random_scene(const GridParams& grid, std::size_t K, const SceneLayout& layout,
                         std::uint64_t seed);

// {"P":..,"Q":..,"targets":[[l_r, n, m, re, im], ...]}
nlohmann::json scene_to_json(const TargetScene& scene);

// Targets are checked against `grid`; P and Q in the record must match it.
TargetScene scene_from_json(const nlohmann::json& j, const GridParams& grid);

} // namespace rasster
