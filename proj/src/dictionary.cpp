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

#include "rasster/dictionary.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "rasster/error.hpp"
#include "rasster/simd/kernels.hpp"

namespace rasster {

namespace {

// Fraction of a turn for p * d / P. fmod is exact, so integer positions
// reduce without rounding.
double range_turns(std::size_t p, double d, std::size_t P) {
    return std::fmod(static_cast<double>(p) * d, static_cast<double>(P)) / static_cast<double>(P);
}

double doppler_turns(std::size_t q, std::size_t n, std::size_t Q) {
    return static_cast<double>((q * n) % Q) / static_cast<double>(Q);
}

cplx unit_phasor(double turns) { return std::polar(1.0, -2.0 * std::numbers::pi * turns); }

} // namespace

DictionaryMatrix DictionaryMatrix::build(std::span<const double> positions, std::size_t P,
                                         std::size_t Q, const BuildOptions& options) {
    if (P == 0 || Q == 0) throw InvalidGrid("dictionary needs P, Q >= 1");
    DictionaryMatrix A;
    A.rows_ = positions.size();
    A.P_ = P;
    A.Q_ = Q;
    A.positions_.assign(positions.begin(), positions.end());
    const std::size_t N = A.rows_;

    const std::size_t factor_bytes = N * (P + Q) * sizeof(cplx);
    const std::size_t full_bytes = N * P * Q * sizeof(cplx);
    if (factor_bytes > options.memory_budget_bytes) {
        throw CapacityError("dictionary factors exceed the memory budget");
    }
    const bool materialize = full_bytes <= options.memory_budget_bytes;
    if (!materialize && !options.allow_lazy) {
        throw CapacityError("dictionary of " + std::to_string(full_bytes) +
                            " bytes exceeds the memory budget");
    }

    A.r_.resize(N * P);
    A.d_.resize(N * Q);
    for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t n = 0; n < N; ++n) A.r_[p * N + n] = unit_phasor(range_turns(p, positions[n], P));
    }
    for (std::size_t q = 0; q < Q; ++q) {
        for (std::size_t n = 0; n < N; ++n) A.d_[q * N + n] = unit_phasor(doppler_turns(q, n, Q));
    }
    if (!materialize) return A;

    A.a_.resize(N * P * Q);
    for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t q = 0; q < Q; ++q) {
            cplx* col = A.a_.data() + encode_cell(p, q, Q) * N;
            if (options.method == BuildMethod::Hadamard) {
                for (std::size_t n = 0; n < N; ++n) col[n] = A.r_[p * N + n] * A.d_[q * N + n];
            } else {
                for (std::size_t n = 0; n < N; ++n) {
                    col[n] = unit_phasor(range_turns(p, positions[n], P) + doppler_turns(q, n, Q));
                }
            }
        }
    }
    return A;
}

DictionaryMatrix DictionaryMatrix::build(const FrequencyPlan& plan, std::size_t P, std::size_t Q,
                                         const BuildOptions& options) {
    const auto pos = plan.positions();
    return build(pos, P, Q, options);
}

cplx DictionaryMatrix::entry(std::size_t n, std::size_t u) const {
    if (!a_.empty()) return a_[u * rows_ + n];
    const std::size_t p = u / Q_;
    const std::size_t q = u % Q_;
    return r_[p * rows_ + n] * d_[q * rows_ + n];
}

void DictionaryMatrix::column(std::size_t u, std::span<cplx> out) const {
    if (!a_.empty()) {
        std::copy_n(a_.begin() + static_cast<std::ptrdiff_t>(u * rows_), rows_, out.begin());
        return;
    }
    const std::size_t p = u / Q_;
    const std::size_t q = u % Q_;
    for (std::size_t n = 0; n < rows_; ++n) out[n] = r_[p * rows_ + n] * d_[q * rows_ + n];
}

std::vector<cplx> DictionaryMatrix::column(std::size_t u) const {
    std::vector<cplx> out(rows_);
    column(u, out);
    return out;
}

void DictionaryMatrix::correlate_abs2(std::span<const cplx> r, std::span<double> out) const {
    const auto& k = simd::kernels();
    if (!a_.empty()) {
        k.correlate_abs2(a_.data(), rows_, cols(), r.data(), out.data());
        return;
    }
    // a_u^H r = D_q^H (conj(R_p) .* r)
    std::vector<cplx> w(rows_);
    for (std::size_t p = 0; p < P_; ++p) {
        k.mul_conj(r_.data() + p * rows_, r.data(), w.data(), rows_);
        k.correlate_abs2(d_.data(), rows_, Q_, w.data(), out.data() + p * Q_);
    }
}

std::vector<cplx> DictionaryMatrix::apply_sparse(std::span<const std::size_t> support,
                                                 std::span<const cplx> values) const {
    std::vector<cplx> y(rows_);
    std::vector<cplx> col(rows_);
    const auto& k = simd::kernels();
    for (std::size_t i = 0; i < support.size(); ++i) {
        column(support[i], col);
        k.axpy(values[i], col.data(), y.data(), rows_);
    }
    return y;
}

void write_dictionary_csv(std::ostream& os, const DictionaryMatrix& A) {
    os << "n,u,re,im\n";
    char buf[96];
    for (std::size_t u = 0; u < A.cols(); ++u) {
        for (std::size_t n = 0; n < A.rows(); ++n) {
            const auto v = A.entry(n, u);
            std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", n, u, v.real(), v.imag());
            os << buf;
        }
    }
}

} // namespace rasster
