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

namespace rasster::simd {
namespace {

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double energy(const cplx* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
    return acc;
}

void correlate_abs2(const cplx* a, std::size_t rows, std::size_t cols, const cplx* r, double* out) {
    for (std::size_t u = 0; u < cols; ++u) {
        const cplx c = dot_conj(a + u * rows, r, rows);
        out[u] = c.real() * c.real() + c.imag() * c.imag();
    }
}

void mul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br + ai * bi, ar * bi - ai * br};
    }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double sr = alpha.real(), si = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx{sr * xr - si * xi, sr * xi + si * xr};
    }
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", dot_conj, energy, correlate_abs2, mul_conj, axpy};
    return table;
}

} // namespace rasster::simd
