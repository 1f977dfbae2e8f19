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

// Compiled with -mavx2 -mfma; only called after the dispatcher has checked
// the CPU flags.

#include <immintrin.h>

#include "spinmap/kernels.hpp"

namespace spinmap::kernels::avx2 {
namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

Complex weighted_phase_sum(const double* a, const double* b, const double* re,
                           const double* im, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t l = 0;
  for (; l + 4 <= n; l += 4) {
    const __m256d w = _mm256_mul_pd(_mm256_loadu_pd(a + l), _mm256_loadu_pd(b + l));
    acc_re = _mm256_fmadd_pd(w, _mm256_loadu_pd(re + l), acc_re);
    acc_im = _mm256_fmadd_pd(w, _mm256_loadu_pd(im + l), acc_im);
  }
  double sum_re = horizontal_sum(acc_re);
  double sum_im = horizontal_sum(acc_im);
  for (; l < n; ++l) {
    const double w = a[l] * b[l];
    sum_re += w * re[l];
    sum_im += w * im[l];
  }
  return {sum_re, sum_im};
}

void complex_matvec(const Complex* a, std::size_t rows, std::size_t cols,
                    const Complex* x, Complex* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = reinterpret_cast<const double*>(a + r * cols);
    // direct: (ar*xr, ai*xi) pairs, crossed: (ar*xi, ai*xr) pairs
    __m256d direct = _mm256_setzero_pd();
    __m256d crossed = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      const __m256d av = _mm256_loadu_pd(row + 2 * c);
      const __m256d xv = _mm256_loadu_pd(xd + 2 * c);
      const __m256d xs = _mm256_permute_pd(xv, 0b0101);
      direct = _mm256_fmadd_pd(av, xv, direct);
      crossed = _mm256_fmadd_pd(av, xs, crossed);
    }
    alignas(32) double d[4];
    alignas(32) double s[4];
    _mm256_store_pd(d, direct);
    _mm256_store_pd(s, crossed);
    double acc_re = (d[0] - d[1]) + (d[2] - d[3]);
    double acc_im = (s[0] + s[1]) + (s[2] + s[3]);
    for (; c < cols; ++c) {
      const Complex av = a[r * cols + c];
      acc_re += av.real() * x[c].real() - av.imag() * x[c].imag();
      acc_im += av.real() * x[c].imag() + av.imag() * x[c].real();
    }
    y[r] = {acc_re, acc_im};
  }
}

void axpy_conj(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar_signed =
      _mm256_setr_pd(alpha.real(), -alpha.real(), alpha.real(), -alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    __m256d yv = _mm256_loadu_pd(yd + 2 * k);
    yv = _mm256_fmadd_pd(ai, xs, yv);
    yv = _mm256_fmadd_pd(ar_signed, xv, yv);
    _mm256_storeu_pd(yd + 2 * k, yv);
  }
  for (; k < n; ++k) {
    const double xr = x[k].real();
    const double xi = x[k].imag();
    y[k] += Complex(alpha.real() * xr + alpha.imag() * xi,
                    alpha.imag() * xr - alpha.real() * xi);
  }
}

}  // namespace spinmap::kernels::avx2
