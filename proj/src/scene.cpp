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

#include "rasster/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "rasster/error.hpp"
#include "rasster/rng.hpp"

namespace rasster {

GridParams derive_grid(const CarrierGrid& grid, std::size_t P, std::size_t Q) {
    grid.validate();
    if (P == 0 || Q == 0) throw InvalidGrid("grid sizes P and Q must be >= 1");
    GridParams g;
    g.P = P;
    g.Q = Q;
    g.R_u = kSpeedOfLight / (2.0 * grid.delta_f);
    g.nu_u = kSpeedOfLight / (2.0 * grid.f_c * grid.T);
    g.delta_R = g.R_u / static_cast<double>(P);
    g.delta_nu = g.nu_u / static_cast<double>(Q);
    g.L_r = static_cast<std::size_t>(std::floor(grid.T / grid.T_p + 1e-9));
    g.f_c = grid.f_c;
    return g;
}

void TargetScene::validate() const {
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> cells;
    for (const auto& t : targets) {
        if (t.n >= grid.P || t.m >= grid.Q) throw InfeasibleScene("target index outside grid");
        if (grid.L_r > 0 && (t.coarse_bin < 1 || t.coarse_bin > grid.L_r)) {
            throw InfeasibleScene("target coarse bin outside [1, L_r]");
        }
        if (!std::isfinite(t.gamma.real()) || !std::isfinite(t.gamma.imag()) || std::abs(t.gamma) == 0.0) {
            throw InfeasibleScene("target gamma must be finite and nonzero");
        }
        if (!cells.emplace(t.coarse_bin, t.n, t.m).second) {
            throw InfeasibleScene("two targets share a grid cell in one coarse bin");
        }
    }
}

std::vector<std::size_t> TargetScene::bins() const {
    std::vector<std::size_t> out;
    for (const auto& t : targets) out.push_back(t.coarse_bin);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Target> TargetScene::in_bin(std::size_t coarse_bin) const {
    std::vector<Target> out;
    for (const auto& t : targets) {
        if (t.coarse_bin == coarse_bin) out.push_back(t);
    }
    return out;
}

PhysicalTarget decode_physical(const Target& target, const GridParams& grid) {
    return {static_cast<double>(target.n) * grid.delta_R, static_cast<double>(target.m) * grid.delta_nu};
}

std::complex<double> reflectivity_from_gamma(std::complex<double> gamma, double range_m, double f_c) {
    const double phase = 4.0 * std::numbers::pi * f_c * range_m / kSpeedOfLight;
    return gamma * std::polar(1.0, phase);
}

std::complex<double> gamma_from_reflectivity(std::complex<double> beta, double range_m, double f_c) {
    const double phase = 4.0 * std::numbers::pi * f_c * range_m / kSpeedOfLight;
    return beta * std::polar(1.0, -phase);
}

namespace {

// Distinct cells in one bin, drawn without replacement.
std::vector<std::pair<std::size_t, std::size_t>> draw_cells(const GridParams& grid, std::size_t count,
                                                            bool moving, Rng& rng) {
    const std::size_t q_span = moving ? grid.Q : 1;
    const std::size_t capacity = grid.P * q_span;
    if (count > capacity) throw InfeasibleScene("more targets than grid cells in a coarse bin");
    std::set<std::size_t> taken;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    while (out.size() < count) {
        const auto c = static_cast<std::size_t>(rng.below(capacity));
        if (taken.insert(c).second) out.emplace_back(c / q_span, c % q_span);
    }
    return out;
}

std::vector<std::size_t> draw_bins(std::size_t L_r, std::size_t count, Rng& rng) {
    if (count > L_r) throw InfeasibleScene("more occupied coarse bins requested than exist");
    std::set<std::size_t> taken;
    std::vector<std::size_t> out;
    while (out.size() < count) {
        const auto b = 1 + static_cast<std::size_t>(rng.below(L_r));
        if (taken.insert(b).second) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TargetScene random_scene(const GridParams& grid, std::size_t K, const SceneLayout& layout,
                         std::uint64_t seed) {
    TargetScene scene;
    scene.grid = grid;
    if (K == 0) return scene;
    const std::size_t L_r = std::max<std::size_t>(grid.L_r, 1);

    std::vector<std::size_t> per_bin_counts;
    switch (layout.kind) {
    case LayoutKind::Widely: per_bin_counts.assign(K, 1); break;
    case LayoutKind::SingleBin: per_bin_counts.assign(1, K); break;
    case LayoutKind::Clustered: {
        if (layout.per_bin == 0) throw InfeasibleScene("clustered layout needs per_bin >= 1");
        for (std::size_t left = K; left > 0;) {
            const auto c = std::min(left, layout.per_bin);
            per_bin_counts.push_back(c);
            left -= c;
        }
        break;
    }
    }

    Rng rng(seed);
    const auto bins = draw_bins(L_r, per_bin_counts.size(), rng);
    for (std::size_t b = 0; b < bins.size(); ++b) {
        for (const auto& [n, m] : draw_cells(grid, per_bin_counts[b], layout.moving, rng)) {
            Target t;
            t.n = n;
            t.m = m;
            t.coarse_bin = bins[b];
            t.gamma = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
            scene.targets.push_back(t);
        }
    }
    return scene;
}

nlohmann::json scene_to_json(const TargetScene& scene) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& t : scene.targets) {
        rows.push_back({t.coarse_bin, t.n, t.m, t.gamma.real(), t.gamma.imag()});
    }
    return {{"P", scene.grid.P}, {"Q", scene.grid.Q}, {"targets", rows}};
}

TargetScene scene_from_json(const nlohmann::json& j, const GridParams& grid) {
    TargetScene scene;
    scene.grid = grid;
    try {
        if (j.contains("P") && j.at("P").get<std::size_t>() != grid.P) {
            throw InfeasibleScene("scene record P does not match grid");
        }
        if (j.contains("Q") && j.at("Q").get<std::size_t>() != grid.Q) {
            throw InfeasibleScene("scene record Q does not match grid");
        }
        for (const auto& row : j.at("targets")) {
            if (!row.is_array() || row.size() != 5) {
                throw InfeasibleScene("scene row must be [l_r, n, m, re, im]");
            }
            Target t;
            t.coarse_bin = row.at(0).get<std::size_t>();
            t.n = row.at(1).get<std::size_t>();
            t.m = row.at(2).get<std::size_t>();
            t.gamma = {row.at(3).get<double>(), row.at(4).get<double>()};
            scene.targets.push_back(t);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InfeasibleScene(std::string("scene record: ") + e.what());
    }
    scene.validate();
    return scene;
}

} // namespace rasster
