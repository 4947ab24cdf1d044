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

// Inner-loop kernels over interleaved complex<double> buffers.
//
// Every kernel has a scalar reference implementation. Vector variants
// live in their own translation units, compiled with the matching ISA
// flags, and are chosen once at startup from CPUID. The scalar table is
// the ground truth the vector tables are tested against.

#include <complex>
#include <cstddef>
#include <string_view>

namespace rasster::simd {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;

    // sum_i conj(a_i) * b_i
    cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);

    // sum_i |v_i|^2
    double (*energy)(const cplx* v, std::size_t n);

    // out_u = |a_u^H r|^2 for the `cols` columns of the column-major
    // rows x cols matrix `a`.
    void (*correlate_abs2)(const cplx* a, std::size_t rows, std::size_t cols, const cplx* r,
                           double* out);

    // out_i = conj(a_i) * b_i
    void (*mul_conj)(const cplx* a, const cplx* b, cplx* out, std::size_t n);

    // y_i += alpha * x_i
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
};

enum class Isa { Scalar, Avx2 };

const KernelTable& scalar_kernels();

// nullptr when the build has no AVX2 table or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels();

// Table used by the library. Resolved on first use: AVX2 when available,
// unless the environment sets RASSTER_SIMD=scalar.
const KernelTable& kernels();

Isa active_isa();

// Overrides the dispatch choice. Returns false (and changes nothing) if the
// requested ISA is unavailable. Not thread-safe against concurrent kernel use.
bool set_active_isa(Isa isa);

} // namespace rasster::simd
