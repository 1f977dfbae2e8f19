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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace spinmap {

using Complex = std::complex<double>;

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Superoperators act on row-major vectorized density matrices, so their rows
// are kept contiguous as well.
using CMatrixRowMajor =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Zero-based index of a spin in a network.
using Site = int;

/// Bit set of excited sites; bit s is set when site s carries an excitation.
using SiteMask = std::uint64_t;

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kState = 1e-10;
inline constexpr double kPsdFloor = 1e-9;
inline constexpr double kMeasureWindow = 1e-9;
inline constexpr double kAmplitudeModulus = 1e-10;
}  // namespace tol

}  // namespace spinmap
