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

#include "spinmap/kernels.hpp"

namespace spinmap::kernels::scalar {

Complex weighted_phase_sum(const double* a, const double* b, const double* re,
                           const double* im, std::size_t n) {
  double sum_re = 0.0;
  double sum_im = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    const double w = a[l] * b[l];
    sum_re += w * re[l];
    sum_im += w * im[l];
  }
  return {sum_re, sum_im};
}

void complex_matvec(const Complex* a, std::size_t rows, std::size_t cols,
                    const Complex* x, Complex* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const Complex* row = a + r * cols;
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      acc_re += row[c].real() * x[c].real() - row[c].imag() * x[c].imag();
      acc_im += row[c].real() * x[c].imag() + row[c].imag() * x[c].real();
    }
    y[r] = {acc_re, acc_im};
  }
}

void axpy_conj(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    // alpha * conj(x)
    const double xr = x[k].real();
    const double xi = x[k].imag();
    y[k] += Complex(alpha.real() * xr + alpha.imag() * xi,
                    alpha.imag() * xr - alpha.real() * xi);
  }
}

}  // namespace spinmap::kernels::scalar
