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

#include <arm_neon.h>

#include "spinmap/kernels.hpp"

namespace spinmap::kernels::neon {

Complex weighted_phase_sum(const double* a, const double* b, const double* re,
                           const double* im, std::size_t n) {
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  std::size_t l = 0;
  for (; l + 2 <= n; l += 2) {
    const float64x2_t w = vmulq_f64(vld1q_f64(a + l), vld1q_f64(b + l));
    acc_re = vfmaq_f64(acc_re, w, vld1q_f64(re + l));
    acc_im = vfmaq_f64(acc_im, w, vld1q_f64(im + l));
  }
  double sum_re = vaddvq_f64(acc_re);
  double sum_im = vaddvq_f64(acc_im);
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
    float64x2_t direct = vdupq_n_f64(0.0);
    float64x2_t crossed = vdupq_n_f64(0.0);
    for (std::size_t c = 0; c < cols; ++c) {
      const float64x2_t av = vld1q_f64(row + 2 * c);
      const float64x2_t xv = vld1q_f64(xd + 2 * c);
      direct = vfmaq_f64(direct, av, xv);
      crossed = vfmaq_f64(crossed, av, vextq_f64(xv, xv, 1));
    }
    y[r] = {vgetq_lane_f64(direct, 0) - vgetq_lane_f64(direct, 1),
            vaddvq_f64(crossed)};
  }
}

void axpy_conj(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const double signs[2] = {alpha.real(), -alpha.real()};
  const float64x2_t ar_signed = vld1q_f64(signs);
  const float64x2_t ai = vdupq_n_f64(alpha.imag());
  for (std::size_t k = 0; k < n; ++k) {
    const float64x2_t xv = vld1q_f64(xd + 2 * k);
    float64x2_t yv = vld1q_f64(yd + 2 * k);
    yv = vfmaq_f64(yv, ai, vextq_f64(xv, xv, 1));
    yv = vfmaq_f64(yv, ar_signed, xv);
    vst1q_f64(yd + 2 * k, yv);
  }
}

}  // namespace spinmap::kernels::neon
