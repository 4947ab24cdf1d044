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

// Compiled with -mavx2 -mfma. Nothing here may run before the dispatcher
// has confirmed CPU support.

#include "rasster/simd/kernels.hpp"

#include <immintrin.h>

namespace rasster::simd {
namespace {

// Two interleaved complex values per register: [re0 im0 re1 im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
    // conj(a) b = (ar br + ai bi) + j (ar bi - ai br)
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = load2(a + i);
        const __m256d vb = load2(b + i);
        const __m256d vb_sw = _mm256_permute_pd(vb, 0b0101);
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        acc_im = _mm256_fmadd_pd(va, vb_sw, acc_im);
    }
    // acc_im lanes hold [ar bi, ai br, ...]; imaginary part is the alternating sum.
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    double re = hsum(acc_re);
    double im = hsum(_mm256_mul_pd(acc_im, sign));
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double energy(const cplx* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d x = load2(v + i);
        acc = _mm256_fmadd_pd(x, x, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
    return s;
}

void correlate_abs2(const cplx* a, std::size_t rows, std::size_t cols, const cplx* r, double* out) {
    for (std::size_t u = 0; u < cols; ++u) {
        const cplx c = dot_conj(a + u * rows, r, rows);
        out[u] = c.real() * c.real() + c.imag() * c.imag();
    }
}

void mul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = load2(a + i);
        const __m256d vb = load2(b + i);
        const __m256d p_re = _mm256_mul_pd(va, vb);
        const __m256d p_im = _mm256_mul_pd(va, _mm256_permute_pd(vb, 0b0101));
        const __m256d re = _mm256_hadd_pd(p_re, p_re);
        const __m256d im = _mm256_hsub_pd(p_im, p_im);
        store2(out + i, _mm256_blend_pd(re, im, 0b1010));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br + ai * bi, ar * bi - ai * br};
    }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = load2(x + i);
        const __m256d t1 = _mm256_mul_pd(vx, ar);
        const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(vx, 0b0101), ai);
        store2(y + i, _mm256_add_pd(load2(y + i), _mm256_addsub_pd(t1, t2)));
    }
    const double sr = alpha.real(), si = alpha.imag();
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx{sr * xr - si * xi, sr * xi + si * xr};
    }
}

} // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{"avx2", dot_conj, energy, correlate_abs2, mul_conj, axpy};
    return table;
}

} // namespace rasster::simd
