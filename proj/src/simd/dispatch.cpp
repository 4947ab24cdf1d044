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

#include "rasster/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace rasster::simd {

#if defined(RASSTER_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(RASSTER_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa initial_isa() {
    if (const char* env = std::getenv("RASSTER_SIMD"); env && std::string_view(env) == "scalar") {
        return Isa::Scalar;
    }
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& active_slot() {
    static std::atomic<Isa> slot{initial_isa()};
    return slot;
}

} // namespace

const KernelTable* avx2_kernels() {
#if defined(RASSTER_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    if (supported) return &avx2_table();
#endif
    return nullptr;
}

const KernelTable& kernels() {
    if (active_slot().load(std::memory_order_relaxed) == Isa::Avx2) {
        if (const auto* t = avx2_kernels()) return *t;
    }
    return scalar_kernels();
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) {
    if (isa == Isa::Avx2 && avx2_kernels() == nullptr) return false;
    active_slot().store(isa, std::memory_order_relaxed);
    return true;
}

} // namespace rasster::simd
