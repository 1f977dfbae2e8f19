// Copyright 2026 The spinmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Data-parallel inner loops used by the sector propagator and the
// superoperator code. Every kernel has a scalar reference implementation;
// vector variants are picked once at runtime from what the CPU reports and
// can be overridden with SPINMAP_SIMD=scalar|avx2|neon.

#include <cstddef>
#include <span>
#include <string_view>

#include "spinmap/types.hpp"

namespace spinmap::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view backend_name(Backend backend);

/// True when the backend was compiled in and the running CPU supports it.
bool backend_available(Backend backend);

/// Backend currently used by the dispatching entry points below.
Backend active_backend();

/// Forces a backend. Throws std::invalid_argument if it is unavailable.
void set_backend(Backend backend);

/// Returns sum_l a[l] * b[l] * (re[l] + i im[l]). All spans share a length.
Complex weighted_phase_sum(std::span<const double> a, std::span<const double> b,
                           std::span<const double> re,
                           std::span<const double> im);

/// y = A x for a row-major rows x cols complex matrix A.
void complex_matvec(std::span<const Complex> a, std::size_t rows,
                    std::size_t cols, std::span<const Complex> x,
                    std::span<Complex> y);

/// y += alpha * conj(x).
void axpy_conj(Complex alpha, std::span<const Complex> x, std::span<Complex> y);

// Per-backend entry points, exposed for equivalence testing.
namespace scalar {
Complex weighted_phase_sum(const double* a, const double* b, const double* re,
                           const double* im, std::size_t n);
void complex_matvec(const Complex* a, std::size_t rows, std::size_t cols,
                    const Complex* x, Complex* y);
void axpy_conj(Complex alpha, const Complex* x, Complex* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
Complex weighted_phase_sum(const double* a, const double* b, const double* re,
                           const double* im, std::size_t n);
void complex_matvec(const Complex* a, std::size_t rows, std::size_t cols,
                    const Complex* x, Complex* y);
void axpy_conj(Complex alpha, const Complex* x, Complex* y, std::size_t n);
}  // namespace avx2

namespace neon {
Complex weighted_phase_sum(const double* a, const double* b, const double* re,
                           const double* im, std::size_t n);
void complex_matvec(const Complex* a, std::size_t rows, std::size_t cols,
                    const Complex* x, Complex* y);
void axpy_conj(Complex alpha, const Complex* x, Complex* y, std::size_t n);
}  // namespace neon

}  // namespace spinmap::kernels
