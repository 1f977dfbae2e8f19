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

#include <array>
#include <span>
#include <string_view>

#include "spinmap/quantum_map.hpp"
#include "spinmap/types.hpp"

namespace spinmap {

/// Clamps a measure into [0, 1]. Values outside the +-1e-9 window throw
/// std::domain_error naming `what`.
double clip_measure(double value, std::string_view what);

/// Wootters concurrence of a two-qubit state. Computed from the singular
/// values of W^T (Y (x) Y) W with rho = W W^dagger, which equal the square
/// roots of the eigenvalues of rho (Y (x) Y) rho* (Y (x) Y).
double concurrence(const CMatrix& rho);
double concurrence(const DensityMatrix& rho);

/// Two-qubit state with support on the diagonal and anti-diagonal only.
struct XState {
  double p00 = 0.0, p11 = 0.0, p22 = 0.0, p33 = 0.0;
  Complex p03 = 0.0, p12 = 0.0;

  /// Throws std::invalid_argument unless the populations are nonnegative and
  /// sum to 1 and both coherences satisfy their 2x2 positivity bounds.
  void validate() const;
  CMatrix matrix() const;
  /// Reads the X entries of a 4x4 matrix; throws if other entries exceed
  /// `tolerance`.
  static XState from_matrix(const CMatrix& rho, double tolerance = tol::kState);
};

/// C = 2 max(0, C1, C2) with the anti-parallel (C1) and parallel (C2) terms.
struct XConcurrence {
  double c = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Concurrence of the X state itself.
XConcurrence x_state_concurrence(const XState& x);

/// After sending the second qubit through the one-qubit map with amplitude f.
XConcurrence x_state_transferred_concurrence(const XState& x, Complex f);

/// After sending both qubits through identical one-qubit maps (dual rail).
XConcurrence dual_rail_transferred_concurrence(const XState& x, Complex f);

/// Phi+- = (|00> +- |11>)/sqrt2, Psi+- = (|01> +- |10>)/sqrt2.
enum class BellState { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

BellState parse_bell_state(std::string_view name);
std::string_view bell_state_name(BellState bell);
CVector bell_state(BellState bell);

/// p |B><B| + (1 - p) I/4. Throws for p outside [0, 1].
DensityMatrix werner(double p, BellState bell);
XState werner_x_state(double p, BellState bell);

/// |psi^T Y^{(x)n} psi|^2 for an even number n of qubits.
double four_tangle(const CVector& psi);

/// sqrt(2 (1 - Tr rho_a^2)) for a single-qubit marginal, or
/// sqrt((4/3)(1 - Tr rho_ab^2)) for a two-qubit marginal.
double bipartition_concurrence(const CVector& psi, std::span<const int> group);

/// C^2_{A(BC)} - C^2_{AB} - C^2_{AC}, clipped at zero.
double three_tangle_pure(const CVector& psi);

/// sum_i p_i tau_3(psi_i) over an eigendecomposition of rho. When rho
/// commutes with the excitation number the decomposition is taken block by
/// block, which keeps degenerate eigenvectors inside one sector.
double three_tangle_decomposition_bound(const CMatrix& rho);

/// Geometric mean of the four one-vs-three and three two-vs-two concurrences.
double four_qubit_concurrence(const CVector& psi);

/// Every measure of a four-qubit pure state, qubits labelled 0..3.
struct MeasureReport {
  std::array<double, 6> pair{};        // (01) (02) (03) (12) (13) (23)
  std::array<double, 4> one_vs_rest{};  // qubit q against the other three
  std::array<double, 3> pair_vs_pair{};  // (01)(23) (02)(13) (03)(12)
  std::array<double, 4> three_tangle{};  // marginal with qubit q traced out
  double four_tangle = 0.0;
  double four_qubit_concurrence = 0.0;

  static int pair_index(int a, int b);
  double pair_concurrence(int a, int b) const { return pair[pair_index(a, b)]; }
};

MeasureReport four_qubit_report(const CVector& psi);

}  // namespace spinmap
