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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "spinmap/kernels.hpp"

namespace spinmap::kernels {
namespace {

struct KernelTable {
  Backend backend;
  Complex (*weighted_phase_sum)(const double*, const double*, const double*,
                                const double*, std::size_t);
  void (*complex_matvec)(const Complex*, std::size_t, std::size_t,
                         const Complex*, Complex*);
  void (*axpy_conj)(Complex, const Complex*, Complex*, std::size_t);
};

constexpr KernelTable kScalarTable{Backend::kScalar, scalar::weighted_phase_sum,
                                   scalar::complex_matvec, scalar::axpy_conj};
#if defined(SPINMAP_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Backend::kAvx2, avx2::weighted_phase_sum,
                                 avx2::complex_matvec, avx2::axpy_conj};
#endif
#if defined(SPINMAP_HAVE_NEON)
constexpr KernelTable kNeonTable{Backend::kNeon, neon::weighted_phase_sum,
                                 neon::complex_matvec, neon::axpy_conj};
#endif

const KernelTable* table_for(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return &kScalarTable;
    case Backend::kAvx2:
#if defined(SPINMAP_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return &kAvx2Table;
      }
#endif
      return nullptr;
    case Backend::kNeon:
#if defined(SPINMAP_HAVE_NEON)
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable* detect() {
  if (const char* forced = std::getenv("SPINMAP_SIMD")) {
    const std::string name(forced);
    if (name == "scalar") return &kScalarTable;
    if (name == "avx2" && table_for(Backend::kAvx2)) return table_for(Backend::kAvx2);
    if (name == "neon" && table_for(Backend::kNeon)) return table_for(Backend::kNeon);
  }
  if (const KernelTable* t = table_for(Backend::kAvx2)) return t;
  if (const KernelTable* t = table_for(Backend::kNeon)) return t;
  return &kScalarTable;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

void require_same_length(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw std::invalid_argument(std::string("kernel length mismatch: ") + what);
  }
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

bool backend_available(Backend backend) { return table_for(backend) != nullptr; }

Backend active_backend() { return current().load()->backend; }

void set_backend(Backend backend) {
  const KernelTable* table = table_for(backend);
  if (table == nullptr) {
    throw std::invalid_argument("SIMD backend not available: " +
                                std::string(backend_name(backend)));
  }
  current().store(table);
}

Complex weighted_phase_sum(std::span<const double> a, std::span<const double> b,
                           std::span<const double> re,
                           std::span<const double> im) {
  require_same_length(a.size(), b.size(), "weights");
  require_same_length(a.size(), re.size(), "real phases");
  require_same_length(a.size(), im.size(), "imaginary phases");
  return current().load()->weighted_phase_sum(a.data(), b.data(), re.data(),
                                              im.data(), a.size());
}

void complex_matvec(std::span<const Complex> a, std::size_t rows,
                    std::size_t cols, std::span<const Complex> x,
                    std::span<Complex> y) {
  require_same_length(rows * cols, a.size(), "matrix");
  require_same_length(cols, x.size(), "input vector");
  require_same_length(rows, y.size(), "output vector");
  current().load()->complex_matvec(a.data(), rows, cols, x.data(), y.data());
}

void axpy_conj(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  require_same_length(x.size(), y.size(), "axpy");
  current().load()->axpy_conj(alpha, x.data(), y.data(), x.size());
}

}  // namespace spinmap::kernels
