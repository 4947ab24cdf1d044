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

// Coarse-bin screening: which bins are worth high-resolution recovery.

#include <cstddef>
#include <span>
#include <vector>

#include "rasster/dictionary.hpp"

namespace rasster {

// P(X > x) for X ~ noncentral chi-square, 2 degrees of freedom,
// noncentrality rho. Poisson mixture of central chi-square tails.
double noncentral_chi2_2_tail(double x, double rho);

// gamma = Q^{-1}_{chi2_2(rho)}(1 - (1 - P_fa)^{card_I}). DomainError unless
// 0 < P_fa < 1, card_I >= 1 and rho >= 0.
double glrt_threshold(double P_fa, double rho, std::size_t card_I);

// Coherent screening statistic for one bin:
// max_u 2 |a_u^H y|^2 / (||a_u||^2 sigma^2). Each term is chi-square with 2
// degrees of freedom when y is noise only.
double matched_filter_statistic(const DictionaryMatrix& A, std::span<const cplx> y, double sigma2);

// Positions in `statistics` whose value exceeds gamma.
std::vector<std::size_t> screen_bins(std::span<const double> statistics, double gamma);

} // namespace rasster
