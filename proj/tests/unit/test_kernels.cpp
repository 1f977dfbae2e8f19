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

#include <catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <vector>

#include "spinmap/kernels.hpp"

using namespace spinmap;
namespace k = spinmap::kernels;

namespace {

std::vector<double> reals(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

std::vector<Complex> complexes(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<Complex> v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Every compiled SIMD variant paired with a name; scalar is the reference.
struct Variant {
  k::Backend backend;
  Complex (*wps)(const double*, const double*, const double*, const double*, std::size_t);
  void (*matvec)(const Complex*, std::size_t, std::size_t, const Complex*, Complex*);
  void (*axpy)(Complex, const Complex*, Complex*, std::size_t);
};

std::vector<Variant> simd_variants() {
  std::vector<Variant> out;
#if defined(__x86_64__)
  if (k::backend_available(k::Backend::kAvx2)) {
    out.push_back({k::Backend::kAvx2, k::avx2::weighted_phase_sum, k::avx2::complex_matvec,
                   k::avx2::axpy_conj});
  }
#endif
#if defined(__aarch64__)
  if (k::backend_available(k::Backend::kNeon)) {
    out.push_back({k::Backend::kNeon, k::neon::weighted_phase_sum, k::neon::complex_matvec,
                   k::neon::axpy_conj});
  }
#endif
  return out;
}

}  // namespace

TEST_CASE("scalar is always available", "[kernels]") {
  CHECK(k::backend_available(k::Backend::kScalar));
  CHECK_FALSE(k::backend_name(k::active_backend()).empty());
}

TEST_CASE("weighted phase sum matches a plain loop", "[kernels]") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 8u, 17u}) {
    auto a = reals(rng, n), b = reals(rng, n), re = reals(rng, n), im = reals(rng, n);
    Complex want = 0.0;
    for (std::size_t l = 0; l < n; ++l) want += a[l] * b[l] * Complex(re[l], im[l]);
    Complex got = k::scalar::weighted_phase_sum(a.data(), b.data(), re.data(), im.data(), n);
    CHECK(std::abs(got - want) < 1e-12);
  }
}

TEST_CASE("SIMD kernels agree with scalar on lengths with tails", "[kernels]") {
  auto variants = simd_variants();
  if (variants.empty()) SKIP("no SIMD backend on this host");
  std::mt19937_64 rng(11);
  for (const auto& v : variants) {
    INFO(k::backend_name(v.backend));
    for (std::size_t n = 0; n <= 37; ++n) {
      auto a = reals(rng, n), b = reals(rng, n), re = reals(rng, n), im = reals(rng, n);
      Complex s = k::scalar::weighted_phase_sum(a.data(), b.data(), re.data(), im.data(), n);
      Complex w = v.wps(a.data(), b.data(), re.data(), im.data(), n);
      CHECK(std::abs(s - w) <= 1e-12 * (1.0 + std::abs(s)));

      auto x = complexes(rng, n);
      auto y0 = complexes(rng, n);
      auto y1 = y0;
      const Complex alpha(0.3, -1.7);
      k::scalar::axpy_conj(alpha, x.data(), y0.data(), n);
      v.axpy(alpha, x.data(), y1.data(), n);
      CHECK(max_diff(y0, y1) <= 1e-13);
    }
    for (std::size_t rows : {1u, 2u, 5u}) {
      for (std::size_t cols = 1; cols <= 19; ++cols) {
        auto a = complexes(rng, rows * cols);
        auto x = complexes(rng, cols);
        std::vector<Complex> y0(rows), y1(rows);
        k::scalar::complex_matvec(a.data(), rows, cols, x.data(), y0.data());
        v.matvec(a.data(), rows, cols, x.data(), y1.data());
        CHECK(max_diff(y0, y1) <= 1e-12);
      }
    }
  }
}

TEST_CASE("axpy_conj conjugates x", "[kernels]") {
  std::vector<Complex> x{{1.0, 2.0}}, y{{0.0, 0.0}};
  k::axpy_conj(Complex(0.0, 1.0), x, y);
  CHECK(std::abs(y[0] - Complex(0.0, 1.0) * Complex(1.0, -2.0)) < 1e-15);
}

TEST_CASE("backend switch round-trips", "[kernels]") {
  const auto before = k::active_backend();
  k::set_backend(k::Backend::kScalar);
  CHECK(k::active_backend() == k::Backend::kScalar);
  std::vector<double> a{1, 2, 3}, b{1, 1, 1}, re{1, 0, 1}, im{0, 1, 0};
  Complex s = k::weighted_phase_sum(a, b, re, im);
  CHECK(std::abs(s - Complex(4.0, 2.0)) < 1e-15);
  k::set_backend(before);
  CHECK(k::active_backend() == before);
}

TEST_CASE("span kernels reject mismatched sizes", "[kernels]") {
  std::vector<double> a{1, 2}, b{1};
  CHECK_THROWS(k::weighted_phase_sum(a, b, a, a));
}
